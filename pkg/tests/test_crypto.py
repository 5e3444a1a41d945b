"""Randomness, PRF, permutation, and puzzle tests."""

import math

import numpy as np
import pytest

from aldc.crypto import (
    Permutation,
    PrfKey,
    RandomStream,
    prf_eval,
    prf_gen,
    puzzle_gen,
    puzzle_solve,
    puzzle_solve_counted,
    sample_permutation,
)
from aldc.errors import DecodeFailure, UsageError


def test_stream_reproducibility():
    a = RandomStream(1234)
    b = RandomStream(1234)
    assert np.array_equal(a.bits(1000), b.bits(1000))
    assert a.substream("x", 3).tobytes(32) == b.substream("x", 3).tobytes(32)


def test_substreams_differ_and_ignore_draw_order():
    root = RandomStream(99)
    s1 = root.substream("left")
    _ = root.bits(512)  # draws on the parent must not disturb children
    s2 = RandomStream(99).substream("left")
    assert np.array_equal(s1.bits(256), s2.bits(256))
    assert root.substream("a", 1).tobytes(16) != root.substream("a", 2).tobytes(16)
    assert root.substream("a").tobytes(16) != root.substream("b").tobytes(16)


def test_permutation_bijective_and_invertible():
    rng = RandomStream(5)
    for n in (1, 2, 17, 1000):
        p = sample_permutation(n, rng.substream(n))
        assert np.array_equal(np.sort(p.forward), np.arange(n))
        x = rng.substream("payload", n).bits(n)
        assert np.array_equal(p.gather(p.scatter(x)), x)
        assert np.array_equal(p.forward[p.inverse()], np.arange(n))
    assert sample_permutation(1, rng).forward.tolist() == [0]
    with pytest.raises(UsageError):
        sample_permutation(0, rng)


def test_permutation_uniformity_chi_square():
    # n = 3: each of the 6 permutations should appear 1000 times in 6000
    # draws, within 3 sigma of the binomial spread
    rng = RandomStream(2024)
    counts = {}
    for i in range(6000):
        p = tuple(sample_permutation(3, rng.substream(i)).forward.tolist())
        counts[p] = counts.get(p, 0) + 1
    assert len(counts) == 6
    chi2 = sum((c - 1000) ** 2 / 1000 for c in counts.values())
    assert chi2 < 20.52  # 99.9% quantile of chi-square with 5 dof


def test_prf_determinism_and_widths():
    rng = RandomStream(7)
    key = prf_gen(rng, in_bits=70, out_bits=300)
    x = rng.bits(70)
    out1, out2 = prf_eval(key, x), prf_eval(key, x)
    assert np.array_equal(out1, out2)
    assert len(out1) == 300
    with pytest.raises(UsageError):
        prf_eval(key, rng.bits(71))
    other = prf_gen(rng, in_bits=70, out_bits=300)
    assert not np.array_equal(prf_eval(other, x), out1)


def test_prf_avalanche():
    # flipping one input bit should flip about half the output bits
    rng = RandomStream(11)
    out_bits, trials = 256, 200
    dists = []
    for i in range(trials):
        key = prf_gen(rng.substream("k", i), 64, out_bits)
        x = rng.substream("x", i).bits(64)
        y = x.copy()
        y[int(rng.substream("pos", i).randint_below(64))] ^= 1
        dists.append(int(np.sum(prf_eval(key, x) ^ prf_eval(key, y))))
    mean = np.mean(dists)
    sigma_mean = math.sqrt(out_bits * 0.25 / trials)
    assert abs(mean - out_bits / 2) <= 3 * sigma_mean


def test_puzzle_roundtrip_and_instrumentation():
    rng = RandomStream(13)
    s = rng.bits(128)
    z = puzzle_gen(s, t=10, rng=rng.substream("gen"))
    got, squarings = puzzle_solve_counted(z)
    assert np.array_equal(got, s)
    assert squarings == 10
    assert np.array_equal(puzzle_solve(z), s)  # solving twice is stable
    assert z.modulus.bit_length() >= 120
    assert 1 < z.base < z.modulus and math.gcd(z.base, z.modulus) == 1


def test_puzzle_rejects_bad_hardness_and_modulus():
    rng = RandomStream(17)
    s = rng.bits(128)
    with pytest.raises(UsageError):
        puzzle_gen(s, t=0, rng=rng)
    z = puzzle_gen(s, t=3, rng=rng)
    bad = type(z)(modulus=4, base=2, t=3,
                  blinded_payload=z.blinded_payload, payload_bits=z.payload_bits)
    with pytest.raises(DecodeFailure):
        puzzle_solve(bad)


def test_puzzle_randomized_encryption():
    rng = RandomStream(19)
    s = rng.bits(128)
    z1 = puzzle_gen(s, t=5, rng=rng.substream(1))
    z2 = puzzle_gen(s, t=5, rng=rng.substream(2))
    assert (z1.modulus, z1.base) != (z2.modulus, z2.base)
    assert np.array_equal(puzzle_solve(z1), puzzle_solve(z2))


def test_permutation_scatter_semantics():
    p = Permutation(np.array([2, 0, 1], dtype=np.int64))
    x = np.array([10, 20, 30])
    # entry j lands at slot forward[j]
    assert p.scatter(x).tolist() == [20, 30, 10]
    assert p.gather(np.array([20, 30, 10])).tolist() == [10, 20, 30]
