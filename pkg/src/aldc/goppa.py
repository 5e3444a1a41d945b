"""Robust secret encryption from a hidden binary Goppa code.

The scheme keeps a random irreducible binary Goppa code as the secret
key.  Encryption encodes the message and deliberately flips ``lam``
codeword bits chosen fresh per call; the embedded noise plus up to
``channel_budget`` adversarial flips stay inside the design correction
radius ``t``, so decryption (Patterson's algorithm) recovers the message
while anyone without the code sees strings that the built-in statistical
tests cannot tell from uniform.

The code with Goppa polynomial ``g`` of degree ``t`` over GF(2^m) and
support ``alpha_1..alpha_n`` is::

    C = { c in {0,1}^n : sum_i c_i / (z - alpha_i) == 0  (mod g(z)) }

Keys store the per-position inverses ``(z - alpha_i)^{-1} mod g`` as a
table, so a syndrome is an XOR-reduction over the flipped positions.
The classical McEliece scrambling matrices S and P are fixed to the
identity here: in the secret-key setting they add nothing, and dropping
them keeps encode/decode transparent to test.

Parameters are desk scale (noise weights 1..8); this module's job is
exact coding behaviour, not concrete cryptographic strength.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitvec import as_bits
from .crypto import RandomStream
from .errors import ConfigError, DecodeFailure, UsageError
from .gf2m import (
    NEG_INF,
    REDUCTION_POLY,
    GF2m,
    Poly,
    PolyModContext,
    gf2_matmul,
    gf2_rref,
    poly_eea,
    poly_invmod,
    poly_is_irreducible,
    poly_sqrt_mod,
    sqrt_x_mod,
)

_MAX_KEYGEN_ATTEMPTS = 64


@dataclass(eq=False)
class GoppaCode:
    """A binary irreducible Goppa code with decoding tables.

    ``inv_table[i]`` holds the coefficients of ``(z - alpha_i)^{-1}`` mod
    ``g``; ``h_bits`` is its bit expansion as an (m*t, n) parity-check
    matrix of full rank; ``gen`` is the (k_dim, n) generator in reduced
    row echelon form with pivot columns ``pivots``, so a codeword's
    message is read off as ``c[pivots]``.
    """

    field: GF2m
    g: Poly
    support: np.ndarray
    inv_table: np.ndarray
    h_bits: np.ndarray
    gen: np.ndarray
    pivots: np.ndarray
    ctx: PolyModContext
    sqrt_x: np.ndarray

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def n(self) -> int:
        return int(self.support.shape[0])

    @property
    def t(self) -> int:
        return int(self.g.degree)

    @property
    def k_dim(self) -> int:
        return int(self.gen.shape[0])


@dataclass(eq=False)
class RseKey:
    code: GoppaCode
    noise_weight: int
    channel_budget: int

    @property
    def k_dim(self) -> int:
        return self.code.k_dim

    @property
    def n(self) -> int:
        return self.code.n


def random_irreducible(field: GF2m, t: int, rng: RandomStream) -> Poly:
    """Uniform monic irreducible polynomial of degree t over the field."""
    if t < 1:
        raise UsageError(f"degree {t} must be positive")
    for _ in range(4000):
        coeffs = np.empty(t + 1, dtype=np.int32)
        coeffs[:t] = rng.integers(0, 1 << field.m, size=t)
        coeffs[t] = 1
        g = Poly(field, coeffs)
        if poly_is_irreducible(g):
            return g
    raise RuntimeError(f"no irreducible polynomial of degree {t} found; check parameters")


def _inverse_table(field: GF2m, g: Poly, support: np.ndarray):
    """(z - alpha_i)^{-1} mod g for every support point, vectorized.

    Synthetic division of g by (z - alpha) gives quotient q with
    g(z) = (z - alpha) q(z) + g(alpha), hence
    (z - alpha)^{-1} = q(z) / g(alpha) mod g.  The recurrence for q runs
    once over the coefficients with all support points in parallel.

    Returns (table, values) where table is (n, t) with row i the
    coefficients of the inverse, and values is g(alpha_i) (a zero entry
    means alpha_i is a root of g and the table row is invalid).
    """
    t = int(g.degree)
    gc = g.coeffs
    alpha = np.asarray(support, dtype=np.int32)
    n = alpha.shape[0]
    q = np.zeros((n, t), dtype=np.int32)
    q[:, t - 1] = gc[t]
    for j in range(t - 2, -1, -1):
        q[:, j] = gc[j + 1] ^ field.mul_vec(alpha, q[:, j + 1])
    gval = gc[0] ^ field.mul_vec(alpha, q[:, 0])
    if np.any(gval == 0):
        return q, gval
    table = field.mul_vec(q, field.inv_vec(gval).astype(np.int32)[:, None])
    return table, gval


def _bit_rows(inv_table: np.ndarray, m: int) -> np.ndarray:
    """Expand the (n, t) field-valued table into (m*t, n) GF(2) rows."""
    n, t = inv_table.shape
    h = np.empty((m * t, n), dtype=np.uint8)
    for j in range(t):
        col = inv_table[:, j]
        for bit in range(m):
            h[j * m + bit] = (col >> bit) & 1
    return h


def _row_syndromes(code: GoppaCode, rows: np.ndarray) -> np.ndarray:
    """Goppa syndrome coefficients for each row of a (r, n) bit matrix."""
    m, t = code.m, code.t
    out = np.zeros((rows.shape[0], t), dtype=np.int32)
    for bit in range(m):
        part = gf2_matmul(rows, ((code.inv_table >> bit) & 1).astype(np.uint8))
        out |= part.astype(np.int32) << bit
    return out


def rse_gen(
    noise_weight: int,
    delta: float,
    target_msg_bits: int | None = None,
    rng: RandomStream | None = None,
    *,
    m: int | None = None,
    n: int | None = None,
    t: int | None = None,
) -> RseKey:
    """Sample a fresh secret code sized for the requested tolerances.

    Either pass explicit (m, n, t) or a target message length; in the
    latter case the smallest field with n = 2^m, t = noise_weight +
    ceil(delta*n) and k_dim = n - m*t >= target_msg_bits is chosen.
    """
    if rng is None:
        raise UsageError("rse_gen requires a RandomStream")
    if noise_weight < 0:
        raise ConfigError(f"noise_weight >= 0 violated: noise_weight={noise_weight}")
    if delta < 0:
        raise ConfigError(f"delta >= 0 violated: delta={delta}")

    if m is None and n is None and t is None:
        if target_msg_bits is None:
            raise ConfigError("need either target_msg_bits or explicit (m, n, t)")
        for cand_m in sorted(REDUCTION_POLY):
            cand_n = 1 << cand_m
            cand_t = noise_weight + math.ceil(delta * cand_n)
            if cand_t < 1:
                cand_t = 1
            k_dim = cand_n - cand_m * cand_t
            if k_dim >= target_msg_bits:
                m, n, t = cand_m, cand_n, cand_t
                break
        else:
            raise ConfigError(
                f"k_dim = n - m*t >= {target_msg_bits} violated for every supported field "
                f"(noise_weight={noise_weight}, delta={delta})"
            )
    elif m is None or n is None or t is None:
        raise ConfigError("explicit sizing requires all of m, n, t")

    if m not in REDUCTION_POLY:
        raise ConfigError(f"m in {sorted(REDUCTION_POLY)} violated: m={m}")
    if not 1 <= n <= (1 << m):
        raise ConfigError(f"1 <= n <= 2^m violated: n={n}, 2^m={1 << m}")
    budget = math.ceil(delta * n)
    if t < noise_weight + budget:
        raise ConfigError(
            f"t >= noise_weight + ceil(delta*n) violated: t={t}, "
            f"noise_weight={noise_weight}, ceil(delta*n)={budget}"
        )
    k_dim = n - m * t
    if k_dim < 1:
        raise ConfigError(f"k_dim = n - m*t >= 1 violated: n={n}, m={m}, t={t}")
    if target_msg_bits is not None and k_dim < target_msg_bits:
        raise ConfigError(
            f"k_dim >= target_msg_bits violated: k_dim={k_dim}, target={target_msg_bits}"
        )

    field = GF2m(m)
    for _ in range(_MAX_KEYGEN_ATTEMPTS):
        g = random_irreducible(field, t, rng)
        support = rng.permutation(1 << m)[:n].astype(np.int32)
        code = _assemble_code(field, g, support)
        if code is not None:
            return RseKey(code=code, noise_weight=noise_weight, channel_budget=budget)
    raise ConfigError(
        f"full-rank parity check unattainable in {_MAX_KEYGEN_ATTEMPTS} attempts "
        f"(m={m}, n={n}, t={t})"
    )


def _assemble_code(field: GF2m, g: Poly, support: np.ndarray) -> GoppaCode | None:
    """Derive every decode table from (g, support); None means resample.

    None is returned exactly when the draw is degenerate: a support point
    is a root of g (t = 1 only) or the bit-expanded parity check loses
    rank, so the dimension n - m*t is not met.
    """
    m, n, t = field.m, len(support), int(g.degree)
    k_dim = n - m * t
    inv_table, gval = _inverse_table(field, g, support)
    if np.any(gval == 0):
        return None
    h_bits = _bit_rows(inv_table, m)
    R, h_pivots = gf2_rref(h_bits)
    if len(h_pivots) != m * t:
        return None
    free = np.setdiff1d(np.arange(n), h_pivots)
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        basis[i, h_pivots] = R[: len(h_pivots), fc]
    gen, pivots = gf2_rref(basis)
    if gen.shape[0] != k_dim or len(pivots) != k_dim:
        return None
    code = GoppaCode(
        field=field,
        g=g,
        support=support,
        inv_table=inv_table,
        h_bits=h_bits,
        gen=gen,
        pivots=pivots,
        ctx=(ctx := PolyModContext(g)),
        sqrt_x=sqrt_x_mod(ctx),
    )
    if np.any(_row_syndromes(code, gen)):
        raise RuntimeError("generator rows fail the Goppa parity identity")
    return code


def code_from_parts(m: int, g_coeffs, support) -> GoppaCode:
    """Rebuild a code and its decode tables from the stored secret.

    The persistent form of a key holds only (m, g, support); everything
    else is recomputed, so a loaded key is bit-compatible with the one
    that was saved.
    """
    if m not in REDUCTION_POLY:
        raise UsageError(f"unsupported field degree m={m}")
    field = GF2m(m)
    g = Poly(field, g_coeffs)
    support = np.asarray(support, dtype=np.int32)
    n = int(support.shape[0])
    if g.degree < 1:
        raise UsageError("stored Goppa polynomial must have degree >= 1")
    if not 1 <= n <= (1 << m):
        raise UsageError(f"stored support length {n} outside [1, 2^{m}]")
    if len(np.unique(support)) != n or support.min() < 0 or support.max() >= (1 << m):
        raise UsageError("stored support must be distinct field elements")
    code = _assemble_code(field, g, support)
    if code is None:
        raise UsageError("stored code parameters are degenerate (rank deficiency)")
    return code


def rse_encode(key: RseKey, msg, rng: RandomStream) -> np.ndarray:
    """Codeword of msg with a fresh uniform weight-lam error applied."""
    code = key.code
    msg = as_bits(msg, code.k_dim)
    word = gf2_matmul(msg[None, :], code.gen)[0]
    if key.noise_weight:
        flips = rng.choice_without_replacement(code.n, key.noise_weight)
        word[flips] ^= 1
    return word


def _syndrome(code: GoppaCode, word: np.ndarray) -> np.ndarray:
    mask = word == 1
    if not mask.any():
        return np.zeros(code.t, dtype=np.int32)
    return np.bitwise_xor.reduce(code.inv_table[mask], axis=0)


def rse_decode(key: RseKey, word) -> np.ndarray:
    """Recover the message from a word within distance t of the code.

    Patterson's algorithm: with syndrome polynomial s, compute
    T = s^{-1} mod g; if T = z the locator is sigma = z, otherwise split
    sqrt(T + z) by the extended Euclidean algorithm into (a, b) with
    deg a <= t/2, deg b <= (t-1)/2 and set sigma = a^2 + z*b^2.  The
    locator's roots over the support mark the flipped positions.
    Raises DecodeFailure when the word is beyond the decoding radius.
    """
    code = key.code
    word = as_bits(word, code.n)
    syn = _syndrome(code, word)
    if not syn.any():
        return word[code.pivots].copy()

    field, g, t = code.field, code.g, code.t
    s_poly = Poly(field, syn)
    try:
        T = poly_invmod(s_poly, g)
    except ZeroDivisionError:
        raise DecodeFailure("syndrome polynomial is not invertible modulo g") from None

    x_res = Poly.x(field) % g
    if T == x_res:
        sigma = Poly.x(field)
    else:
        root = poly_sqrt_mod(T + x_res, g, code.ctx, code.sqrt_x)
        try:
            _, b_poly, a_poly = poly_eea(g, root, t // 2)
        except ZeroDivisionError:
            raise DecodeFailure("Euclidean split of the locator failed") from None
        if b_poly.degree is NEG_INF or b_poly.degree > (t - 1) // 2:
            raise DecodeFailure("locator split degree out of range")
        sigma = a_poly * a_poly + (b_poly * b_poly).shift(1)
        if sigma.is_zero():
            raise DecodeFailure("degenerate error locator")
        sigma = sigma.monic()

    evals = sigma.eval_many(code.support)
    err = evals == 0
    if int(err.sum()) != sigma.degree:
        raise DecodeFailure(
            f"error locator of degree {sigma.degree} has {int(err.sum())} support roots"
        )
    corrected = word.copy()
    corrected[err] ^= 1
    if _syndrome(code, corrected).any():
        raise DecodeFailure("corrected word fails the parity recheck")
    return corrected[code.pivots].copy()


def rows_in_code(code: GoppaCode, rows) -> bool:
    """True iff every row satisfies the Goppa parity identity of the code."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.uint8))
    if rows.shape[1] != code.n:
        raise UsageError(f"row width {rows.shape[1]} does not match n = {code.n}")
    return not np.any(_row_syndromes(code, rows))


def rse_game_sample(key: RseKey, b: int, rng: RandomStream) -> np.ndarray:
    """One sample of the real-vs-random game: b=0 real, b=1 uniform."""
    if b not in (0, 1):
        raise UsageError(f"game bit must be 0 or 1, got {b}")
    if b == 0:
        return rse_encode(key, rng.bits(key.k_dim), rng)
    return rng.bits(key.n)
