"""Field, polynomial, and GF(2) linear algebra tests.

Reference values are produced by independent oracles inside this file:
shift-reduce multiplication, exhaustive inverse search, and dense numpy
re-derivations. Frozen constants are asserted literally.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aldc.gf2m import (
    NEG_INF,
    REDUCTION_POLY,
    GF2m,
    Poly,
    PolyModContext,
    gf2_matmul,
    gf2_nullspace,
    gf2_rank,
    gf2_rref,
    poly_eea,
    poly_gcd,
    poly_invmod,
    poly_is_irreducible,
    poly_sqrt_mod,
    sqrt_x_mod,
)


def slow_mul(a, b, m, red):
    """Oracle: bitwise shift-reduce product, no tables."""
    acc = 0
    for i in range(m):
        if (b >> i) & 1:
            acc ^= a << i
    for d in range(2 * m - 2, m - 1, -1):
        if (acc >> d) & 1:
            acc ^= red << (d - m)
    return acc


F16 = GF2m(4)
F256 = GF2m(8)


def test_known_products_gf16():
    # alpha * alpha^3 = alpha^4 = alpha + 1 under x^4 + x + 1
    assert F16.mul(0b0010, 0b1000) == 0b0011
    for a in range(16):
        assert F16.mul(a, 1) == a
        assert F16.mul(a, 0) == 0


def test_mul_matches_oracle_exhaustive():
    for f in (F16, F256):
        red = f.reduction
        for a in range(2**f.m):
            for b in range(2**f.m):
                assert f.mul(a, b) == slow_mul(a, b, f.m, red)


def test_inverse_against_exhaustive_search():
    # alpha^-1 = alpha^14 in GF(16) since alpha^15 = 1
    assert F16.inv(0b0010) == F16.pow(0b0010, 14)
    for f in (F16, F256):
        for a in range(1, 2**f.m):
            found = [b for b in range(1, 2**f.m) if f.mul(a, b) == 1]
            assert found == [f.inv(a)]
            assert f.inv(f.inv(a)) == a
    with pytest.raises(ZeroDivisionError):
        F16.inv(0)


def test_field_axioms_exhaustive_m8():
    # (a*b)*c = a*(b*c) and a*(b^c) = a*b ^ a*c, all 2^24 triples at once
    f = F256
    a = np.arange(256, dtype=np.int32)[:, None, None]
    b = np.arange(256, dtype=np.int32)[None, :, None]
    c = np.arange(256, dtype=np.int32)[None, None, :]
    ab = f.mul_vec(np.broadcast_to(a, (256, 256, 1)), np.broadcast_to(b, (256, 256, 1)))
    bc = f.mul_vec(np.broadcast_to(b, (1, 256, 256)), np.broadcast_to(c, (1, 256, 256)))
    left = f.mul_vec(np.broadcast_to(ab, (256, 256, 256)), np.broadcast_to(c, (256, 256, 256)))
    right = f.mul_vec(np.broadcast_to(a, (256, 256, 256)), np.broadcast_to(bc, (256, 256, 256)))
    assert np.array_equal(left, right)
    dist_l = f.mul_vec(np.broadcast_to(a, (256, 256, 256)),
                       np.broadcast_to(b ^ c, (256, 256, 256)))
    dist_r = ab[..., 0][:, :, None] ^ f.mul_vec(
        np.broadcast_to(a, (256, 256, 256)), np.broadcast_to(c, (256, 256, 256)))
    assert np.array_equal(dist_l, dist_r)
    # a + a = 0 is XOR self-inverse, trivially
    assert np.all(np.arange(256) ^ np.arange(256) == 0)


def test_every_table_polynomial_is_primitive():
    for m in REDUCTION_POLY:
        f = GF2m(m)  # constructor raises if x fails to generate the group
        assert f.order == 2**m - 1


def test_reject_non_primitive_reduction():
    # x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive (order 5)
    with pytest.raises(ValueError):
        GF2m(4, reduction=0x1F)


def test_vector_ops_match_scalar():
    rng = np.random.default_rng(7)
    a = rng.integers(0, 256, 500).astype(np.int32)
    b = rng.integers(0, 256, 500).astype(np.int32)
    prod = F256.mul_vec(a, b)
    assert all(int(p) == F256.mul(int(x), int(y)) for p, x, y in zip(prod, a, b))
    nz = a[a != 0]
    assert all(F256.mul(int(x), int(i)) == 1 for x, i in zip(nz, F256.inv_vec(nz)))
    s = F256.sqrt_vec(a)
    assert all(F256.mul(int(r), int(r)) == int(x) for r, x in zip(s, a))


# ---------------- polynomials ----------------


def rand_poly(f, rng, max_deg):
    return Poly(f, rng.integers(0, 2**f.m, rng.integers(0, max_deg + 2)))


def test_poly_degree_sentinel():
    z = Poly.zero(F16)
    assert z.degree == NEG_INF
    assert z.degree < 0
    assert Poly.one(F16).degree == 0
    assert (z + z).is_zero()


def test_poly_divmod_property():
    rng = np.random.default_rng(11)
    for _ in range(300):
        a = rand_poly(F16, rng, 12)
        b = rand_poly(F16, rng, 6)
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert r.degree < b.degree or r.is_zero()
        assert q * b + r == a


def test_eea_trivial_and_gcd():
    a = Poly(F16, [1, 0, 1])  # x^2 + 1 = (x+1)^2 over GF(2) subfield
    b = Poly(F16, [1, 1])
    assert poly_gcd(a, b) == Poly(F16, [1, 1])
    u, v, r = poly_eea(a, a, stop_degree=a.degree)
    assert (u, v, r) == (Poly.one(F16), Poly.zero(F16), a)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_eea_bezout_identity(seed):
    rng = np.random.default_rng(seed)
    a = rand_poly(F256, rng, 10)
    b = rand_poly(F256, rng, 8)
    if b.is_zero():
        b = Poly.one(F256)
    stop = int(rng.integers(0, 11))
    try:
        u, v, r = poly_eea(a, b, stop)
    except ZeroDivisionError:
        # chain ended above the bound: gcd degree exceeds stop
        assert poly_gcd(a, b).degree > stop
        return
    assert u * a + v * b == r
    assert r.is_zero() or r.degree <= stop


def test_eea_returns_first_qualifying_remainder():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a = rand_poly(F256, rng, 12)
        b = rand_poly(F256, rng, 9)
        if b.is_zero() or a.degree <= b.degree:
            continue
        stop = int(rng.integers(0, 9))
        try:
            _, _, r = poly_eea(a, b, stop)
        except ZeroDivisionError:
            continue
        # walk the remainder chain independently; r must be its first
        # element with degree <= stop
        chain = [a, b]
        while not chain[-1].is_zero():
            chain.append(chain[-2] % chain[-1])
        firsts = [p for p in chain if p.degree <= stop]
        assert r == firsts[0]


def test_invmod():
    rng = np.random.default_rng(5)
    g = Poly(F256, [1, 0, 0, 1, 1, 0, 0, 0, 1])  # any modulus, gcd checked below
    hits = 0
    for _ in range(200):
        p = rand_poly(F256, rng, 7)
        if p.is_zero():
            continue
        if poly_gcd(p, g).degree > 0:
            continue
        hits += 1
        ip = poly_invmod(p, g)
        assert (ip * p) % g == Poly.one(F256)
    assert hits > 100


def test_polymod_context_matches_naive():
    rng = np.random.default_rng(13)
    for _ in range(50):
        g = rand_poly(F256, rng, 9)
        while g.degree < 1:
            g = rand_poly(F256, rng, 9)
        ctx = PolyModContext(g)
        p = rand_poly(F256, rng, 8)
        q = rand_poly(F256, rng, 8)
        pr, qr = p % ctx.g, q % ctx.g
        got = ctx.poly(ctx.mulmod(pr.coeffs, qr.coeffs))
        assert got == (pr * qr) % ctx.g
        assert ctx.poly(ctx.sqmod(pr.coeffs)) == (pr * pr) % ctx.g


def test_sqrt_mod_trivial_and_property():
    f = GF2m(6)
    rng = np.random.default_rng(17)
    # an irreducible quartic over GF(64), found by the tested predicate but
    # verified by brute multiply-back below
    g = None
    while g is None:
        cand = Poly(f, list(rng.integers(0, 64, 4)) + [1])
        if poly_is_irreducible(cand):
            g = cand
    ctx = PolyModContext(g)
    sx = sqrt_x_mod(ctx)
    assert ctx.poly(ctx.sqmod(sx)) == Poly.x(f) % g
    assert poly_sqrt_mod(Poly.one(f), g) == Poly.one(f)
    x2 = Poly(f, [0, 0, 1])
    assert poly_sqrt_mod(x2 % g, g) == Poly.x(f)
    for _ in range(50):
        p = rand_poly(f, rng, 3)
        r = poly_sqrt_mod(p, g, ctx=ctx, sqrt_x=sx)
        assert (r * r) % g == p % g


def test_irreducibility_against_exhaustive_factor_search():
    # over GF(16): compare Ben-Or with brute-force root/factor checks for
    # all monic cubics (a cubic is reducible iff it has a root)
    f = F16
    for c0 in range(16):
        for c1 in range(16):
            for c2 in range(16):
                g = Poly(f, [c0, c1, c2, 1])
                has_root = any(g.eval_at(x) == 0 for x in range(16))
                assert poly_is_irreducible(g) == (not has_root)


def test_irreducibility_known_cases():
    f2m = GF2m(4)
    # x^4+x+1 is irreducible over GF(2) but splits over GF(16): its roots
    # are alpha and its conjugates, all inside the field
    quartic = Poly(f2m, [1, 1, 0, 0, 1])
    assert any(quartic.eval_at(x) == 0 for x in range(16))
    assert not poly_is_irreducible(quartic)
    # a quadratic over GF(16) is irreducible iff it has no roots
    for c in range(16):
        q = Poly(f2m, [c, 1, 1])
        rootless = not any(q.eval_at(x) == 0 for x in range(16))
        assert poly_is_irreducible(q) == rootless
    assert not poly_is_irreducible(Poly(f2m, [1, 0, 1]))  # (x+1)^2
    assert poly_is_irreducible(Poly.x(f2m))
    assert not poly_is_irreducible(Poly.one(f2m))


# ---------------- GF(2) linear algebra ----------------


def test_rref_involution_and_rank():
    rng = np.random.default_rng(23)
    for _ in range(50):
        m = rng.integers(0, 2, (rng.integers(1, 12), rng.integers(1, 12))).astype(np.uint8)
        r1, p1 = gf2_rref(m)
        r2, p2 = gf2_rref(r1)
        assert np.array_equal(r1, r2) and np.array_equal(p1, p2)
        assert gf2_rank(m) == len(p1) <= min(m.shape)


def test_nullspace_trivial_cases():
    assert gf2_nullspace(np.eye(5, dtype=np.uint8)).shape == (0, 5)
    z = gf2_nullspace(np.zeros((3, 4), dtype=np.uint8))
    assert z.shape == (4, 4) and gf2_rank(z) == 4


def test_nullspace_spans_kernel():
    rng = np.random.default_rng(29)
    for _ in range(50):
        m = rng.integers(0, 2, (6, 11)).astype(np.uint8)
        ns = gf2_nullspace(m)
        assert ns.shape[0] == 11 - gf2_rank(m)
        assert not np.any(gf2_matmul(m, ns.T))
        assert gf2_rank(ns) == ns.shape[0]
