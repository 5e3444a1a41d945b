"""Arithmetic over GF(2^m), polynomials over it, and GF(2) linear algebra.

This module is the algebra layer under the block codecs:

* ``GF2m``: a binary extension field with log/antilog tables. Elements are
  plain Python ints in ``[0, 2^m)`` interpreted as bit-packed polynomials
  over GF(2); addition is XOR.
* ``Poly``: dense univariate polynomials with coefficients in one ``GF2m``
  field, lowest degree first. The zero polynomial has degree ``NEG_INF``
  (a real minus-infinity sentinel, never ``-1``).
* ``poly_eea``: extended Euclidean algorithm with a degree stop, the
  workhorse for decoder key equations and modular inverses.
* ``PolyModContext``: fast multiply/square modulo a fixed modulus, used by
  the irreducibility test and the binary Goppa decoder.
* ``gf2_rref`` / ``gf2_rank`` / ``gf2_nullspace``: row reduction over GF(2)
  on numpy 0/1 matrices.

Only fields of characteristic 2 are supported, with one published
primitive reduction polynomial fixed per degree so that every run of the
library agrees on the arithmetic.
"""

from __future__ import annotations

import numpy as np

NEG_INF = float("-inf")

# One primitive reduction polynomial per supported degree. Values are the
# usual published primitive polynomials, bit-packed with the leading term
# included (e.g. 0x11D = x^8+x^4+x^3+x^2+1).
REDUCTION_POLY = {
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
}


def _mul_shift_reduce(a: int, b: int, m: int, reduction: int) -> int:
    """Schoolbook carry-less multiply followed by reduction. Table-free."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= reduction
    return acc


class GF2m:
    """The field GF(2^m) with table-driven arithmetic.

    Parameters
    ----------
    m : int
        Extension degree, 4 <= m <= 13 for the built-in polynomial table.
    reduction : int, optional
        Bit-packed reduction polynomial of degree m. Must be primitive:
        construction fails if x does not generate the multiplicative group.

    Attributes
    ----------
    m : int
    reduction : int
    order : int
        Size of the multiplicative group, 2^m - 1.
    """

    def __init__(self, m: int, reduction: int | None = None):
        if reduction is None:
            if m not in REDUCTION_POLY:
                raise ValueError(f"no built-in reduction polynomial for m={m}")
            reduction = REDUCTION_POLY[m]
        if reduction >> m != 1:
            raise ValueError(f"reduction polynomial 0x{reduction:x} does not have degree {m}")
        self.m = m
        self.reduction = reduction
        self.order = (1 << m) - 1

        n = self.order
        exp = np.zeros(2 * n, dtype=np.int32)
        log = np.zeros(n + 1, dtype=np.int32)
        x = 1
        for i in range(n):
            exp[i] = x
            if i > 0 and x == 1:
                raise ValueError(f"0x{reduction:x} is not primitive for m={m}")
            log[x] = i
            x = _mul_shift_reduce(x, 2, m, reduction)
        if x != 1:
            raise ValueError(f"0x{reduction:x} is not primitive for m={m}")
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log

    # ---- scalar ops ----

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return int(self._exp[self.order - self._log[a]])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in GF(2^m)")
            return 0
        return int(self._exp[(int(self._log[a]) * e) % self.order])

    def sqrt(self, a: int) -> int:
        # Frobenius inverse: squaring is a bijection in characteristic 2.
        return self.pow(a, 1 << (self.m - 1))

    def sqrt_vec(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self._exp[(self._log[a].astype(np.int64) << (self.m - 1)) % self.order]
        out = out.copy()
        out[a == 0] = 0
        return out.astype(np.int32)

    def alpha_pow(self, e: int) -> int:
        """alpha^e for the fixed generator alpha = x (value 2)."""
        return int(self._exp[e % self.order])

    # ---- vector ops (numpy int arrays of field values) ----

    def mul_vec(self, a: np.ndarray, b) -> np.ndarray:
        """Elementwise product; b may be an array of the same shape or a scalar."""
        a = np.asarray(a, dtype=np.int32)
        out = self._exp[self._log[a] + self._log[np.asarray(b, dtype=np.int32)]]
        if np.isscalar(b) or np.ndim(b) == 0:
            if b == 0:
                return np.zeros_like(a)
            out = out.copy()
            out[a == 0] = 0
        else:
            out = out.copy()
            out[(a == 0) | (np.asarray(b) == 0)] = 0
        return out

    def inv_vec(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int32)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return self._exp[self.order - self._log[a]]

    def __repr__(self):
        return f"GF2m(m={self.m}, reduction=0x{self.reduction:x})"

    def __eq__(self, other):
        return isinstance(other, GF2m) and (self.m, self.reduction) == (other.m, other.reduction)

    def __hash__(self):
        return hash((self.m, self.reduction))


# ---------------- array-level polynomial helpers ----------------
# Polynomials as 1-D int32 arrays, lowest degree first, not necessarily
# trimmed. The Poly class below wraps these with trimming and operators.


def _atrim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


def _amul(field: GF2m, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    if len(a) > len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int32)
    for i in np.nonzero(a)[0]:
        out[i : i + len(b)] ^= field.mul_vec(b, int(a[i]))
    return out


def _adivmod(field: GF2m, a: np.ndarray, b: np.ndarray):
    b = _atrim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _atrim(a).copy()
    db = len(b) - 1
    if len(rem) - 1 < db:
        return np.zeros(0, dtype=np.int32), rem
    quot = np.zeros(len(rem) - db, dtype=np.int32)
    lead_inv = field.inv(int(b[-1]))
    for d in range(len(rem) - 1, db - 1, -1):
        if rem[d]:
            q = field.mul(int(rem[d]), lead_inv)
            quot[d - db] = q
            rem[d - db : d + 1] ^= field.mul_vec(b, q)
    return quot, _atrim(rem)


class Poly:
    """A polynomial over one GF2m field, coefficients lowest degree first.

    Immutable by convention: operations return new Poly objects and never
    write to the stored coefficient array.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF2m, coeffs):
        self.field = field
        c = _atrim(np.asarray(coeffs, dtype=np.int32))
        if np.any(c < 0) or np.any(c > field.order):
            raise ValueError("coefficient out of field range")
        self.coeffs = c

    @classmethod
    def zero(cls, field: GF2m) -> "Poly":
        return cls(field, [])

    @classmethod
    def one(cls, field: GF2m) -> "Poly":
        return cls(field, [1])

    @classmethod
    def x(cls, field: GF2m) -> "Poly":
        return cls(field, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if len(self.coeffs) else NEG_INF

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise ValueError("polynomials from different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=np.int32)
        out[: len(self.coeffs)] = self.coeffs
        out[: len(other.coeffs)] ^= other.coeffs
        return Poly(self.field, out)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(self.field, _amul(self.field, self.coeffs, other.coeffs))

    def __divmod__(self, other: "Poly"):
        self._check(other)
        q, r = _adivmod(self.field, self.coeffs, other.coeffs)
        return Poly(self.field, q), Poly(self.field, r)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def scale(self, s: int) -> "Poly":
        if s == 0:
            return Poly.zero(self.field)
        return Poly(self.field, self.field.mul_vec(self.coeffs, s))

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.field, np.concatenate([np.zeros(k, dtype=np.int32), self.coeffs]))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(int(self.coeffs[-1])))

    def eval_at(self, x: int) -> int:
        acc = 0
        for c in self.coeffs[::-1]:
            acc = self.field.mul(acc, x) ^ int(c)
        return acc

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Horner evaluation at an array of points."""
        points = np.asarray(points, dtype=np.int32)
        acc = np.zeros(len(points), dtype=np.int32)
        for c in self.coeffs[::-1]:
            acc = self.field.mul_vec(acc, points) ^ int(c)
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and len(self.coeffs) == len(other.coeffs)
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def __hash__(self):
        return hash((self.field, self.coeffs.tobytes()))

    def __repr__(self):
        return f"Poly({self.field!r}, {list(map(int, self.coeffs))})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_eea(a: Poly, b: Poly, stop_degree) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid on (a, b) stopped at a remainder degree bound.

    Returns the first triple (u, v, r) in the remainder sequence
    r_0 = a, r_1 = b, r_{i+1} = r_{i-1} mod r_i with u*a + v*b = r and
    deg r <= stop_degree. This is the split step of algebraic decoders:
    the stop rule, not the full gcd, is the contract.

    Raises ZeroDivisionError if b = 0 and a does not already satisfy the
    bound (the remainder sequence cannot advance).
    """
    if a.field != b.field:
        raise ValueError("polynomials from different fields")
    f = a.field
    r0, r1 = a, b
    u0, u1 = Poly.one(f), Poly.zero(f)
    v0, v1 = Poly.zero(f), Poly.one(f)
    while r0.degree > stop_degree:
        if r1.is_zero():
            raise ZeroDivisionError("EEA remainder chain exhausted above stop_degree")
        q, r2 = divmod(r0, r1)
        r0, r1 = r1, r2
        u0, u1 = u1, u0 + q * u1
        v0, v1 = v1, v0 + q * v1
    return u0, v0, r0


def poly_invmod(p: Poly, g: Poly) -> Poly:
    """Inverse of p modulo g; requires gcd(p, g) = 1."""
    p = p % g
    if p.is_zero():
        raise ZeroDivisionError("0 has no inverse modulo g")
    u, v, r = poly_eea(g, p, 0)
    if r.is_zero():
        raise ZeroDivisionError("p is not invertible modulo g")
    # r is a nonzero constant: u*g + v*p = r, so v/r inverts p mod g.
    return v.scale(g.field.inv(int(r.coeffs[0]))) % g


class PolyModContext:
    """Fast arithmetic modulo a fixed polynomial g.

    Precomputes the reduction rows x^(t+j) mod g so that products of
    residues fold back in a handful of vector operations instead of a
    long division. Squaring uses the characteristic-2 identity
    (sum c_i x^i)^2 = sum c_i^2 x^(2i).
    """

    def __init__(self, g: Poly):
        if g.degree is NEG_INF or g.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        self.field = g.field
        self.g = g.monic()
        t = int(self.g.degree)
        self.t = t
        # x^t mod g is the low part of g (g monic, characteristic 2).
        rows = np.zeros((max(t - 1, 1), t), dtype=np.int32)
        rows[0] = self.g.coeffs[:t]
        for j in range(1, t - 1):
            prev = rows[j - 1]
            rows[j, 1:] = prev[:-1]
            rows[j, 0] = 0
            if prev[t - 1]:
                rows[j] ^= self.field.mul_vec(rows[0], int(prev[t - 1]))
        self._rows = rows

    def _reduce(self, c: np.ndarray) -> np.ndarray:
        """Reduce an array of length <= 2t-1 to a residue array of length t."""
        t = self.t
        out = np.zeros(t, dtype=np.int32)
        out[: min(t, len(c))] = c[:t]
        hi = c[t:]
        nz = np.nonzero(hi)[0]
        if len(nz):
            prod = self.field.mul_vec(self._rows[nz], hi[nz][:, None])
            out ^= np.bitwise_xor.reduce(prod, axis=0)
        return out

    def mulmod(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        return self._reduce(_amul(self.field, _atrim(p), _atrim(q)))

    def sqmod(self, p: np.ndarray) -> np.ndarray:
        p = _atrim(p)
        if len(p) == 0:
            return np.zeros(self.t, dtype=np.int32)
        sq = np.zeros(2 * len(p) - 1, dtype=np.int32)
        sq[::2] = self.field.mul_vec(p, p)
        return self._reduce(sq)

    def pow2k(self, p: np.ndarray, k: int) -> np.ndarray:
        """p^(2^k) mod g."""
        out = self._reduce(np.asarray(p, dtype=np.int32))
        for _ in range(k):
            out = self.sqmod(out)
        return out

    def poly(self, c: np.ndarray) -> Poly:
        return Poly(self.field, c)


def sqrt_x_mod(ctx: PolyModContext) -> np.ndarray:
    """Residue s with s^2 = x modulo the context's modulus g.

    Squaring is a permutation of the residue ring when g is separable, so
    the Frobenius orbit of x is a cycle; the predecessor of x on that
    cycle is its square root. Raises ValueError if the orbit never
    returns (g not separable).
    """
    x_res = np.zeros(ctx.t, dtype=np.int32)
    if ctx.t == 1:
        x_res[0] = ctx.g.coeffs[0]  # x = g - x is constant mod a linear g
    else:
        x_res[1] = 1
    cur = x_res
    for _ in range(ctx.field.m * ctx.t):
        nxt = ctx.sqmod(cur)
        if np.array_equal(nxt, x_res):
            return cur
        cur = nxt
    raise ValueError("modulus is not separable; x has no Frobenius cycle")


def poly_sqrt_mod(p: Poly, g: Poly, ctx: PolyModContext | None = None,
                  sqrt_x: np.ndarray | None = None) -> Poly:
    """The unique r with r^2 = p modulo a separable g.

    Splits p into even and odd coefficient halves, takes coefficient
    square roots (Frobenius inverse in GF(2^m)), and recombines through a
    precomputed square root of x. Decoders pass ctx and sqrt_x to avoid
    recomputing them per call.
    """
    if ctx is None:
        ctx = PolyModContext(g)
    if sqrt_x is None:
        sqrt_x = sqrt_x_mod(ctx)
    f = g.field
    c = np.zeros(ctx.t, dtype=np.int32)
    res = (p % ctx.g).coeffs
    c[: len(res)] = res
    even = f.sqrt_vec(c[0::2])
    odd = f.sqrt_vec(c[1::2])
    out = np.zeros(ctx.t, dtype=np.int32)
    out[: len(even)] = even
    if np.any(odd):
        out ^= ctx.mulmod(sqrt_x, odd)
    return Poly(f, out)


def poly_is_irreducible(g: Poly) -> bool:
    """Ben-Or irreducibility test over GF(2^m).

    g is irreducible iff gcd(g, x^(q^i) - x) = 1 for i = 1 .. deg(g)//2
    with q the field size. Random reducible candidates almost always fail
    at small i, so the common case rejects after one gcd.
    """
    t = g.degree
    if t is NEG_INF or t < 1:
        return False
    if t == 1:
        return True
    if g.coeffs[0] == 0:
        return False  # divisible by x
    f = g.field
    ctx = PolyModContext(g)
    xq = np.zeros(ctx.t, dtype=np.int32)
    xq[1] = 1  # the residue x
    x_poly = Poly.x(f)
    for _ in range(int(t) // 2):
        xq = ctx.pow2k(xq, f.m)
        h = ctx.poly(xq) + x_poly
        if h.is_zero() or poly_gcd(g, h).degree > 0:
            return False
    return True


# ---------------- GF(2) linear algebra ----------------


def gf2_rref(mat: np.ndarray):
    """Reduced row echelon form over GF(2).

    Parameters
    ----------
    mat : (rows, cols) array of 0/1

    Returns
    -------
    (R, pivots) : R is the rref as uint8, pivots the pivot column indices.
    """
    R = np.array(mat, dtype=np.uint8, copy=True) & 1
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        sub = R[r:, c]
        hit = np.nonzero(sub)[0]
        if len(hit) == 0:
            continue
        p = r + hit[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if len(others):
            R[others] ^= R[r]
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


def gf2_rank(mat: np.ndarray) -> int:
    return len(gf2_rref(mat)[1])


def gf2_nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis of {x : mat @ x = 0 over GF(2)}, one vector per row.

    Returns a (cols - rank, cols) uint8 array; rows are linearly
    independent by construction (each has a 1 in its own free column).
    """
    R, pivots = gf2_rref(mat)
    rows, cols = R.shape
    free = np.setdiff1d(np.arange(cols), pivots)
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        if len(pivots):
            basis[i, pivots] = R[: len(pivots), fc]
    return basis


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product over GF(2) for 0/1 uint8 arrays."""
    return (a.astype(np.int64) @ b.astype(np.int64) & 1).astype(np.uint8)
