"""Tail bounds and the block-overflow experiment."""

import math

import pytest

from aldc import (
    ConfigError,
    RandomStream,
    block_overflow_experiment,
    hypergeometric_bound,
)


def test_reference_values():
    # Independent recomputation straight from the two closed forms.
    dc, d, A = 0.1, 0.05, 2000
    gap = dc - d
    want_printed = math.exp(math.log(2) * (-2 * ((gap * A) ** 2 - 1) / (A + 1)))
    want_standard = math.exp(-2 * gap * gap * A)
    pair = hypergeometric_bound(dc, d, A)
    assert pair.printed == pytest.approx(want_printed, rel=1e-12)
    assert pair.standard == pytest.approx(want_standard, rel=1e-12)
    # Known magnitudes for this parameter point.
    assert pair.printed == pytest.approx(9.806e-4, rel=1e-3)
    assert pair.standard == pytest.approx(4.540e-5, rel=1e-3)


def test_unit_gap_edge():
    # (delta_code - delta_channel) * A == 1 makes the printed exponent zero.
    pair = hypergeometric_bound(0.8, 0.3, 2)
    assert pair.printed == pytest.approx(1.0, rel=1e-12)


def test_monotone_in_gap():
    lo = hypergeometric_bound(0.10, 0.05, 500)
    hi = hypergeometric_bound(0.20, 0.05, 500)
    assert hi.printed < lo.printed
    assert hi.standard < lo.standard


@pytest.mark.parametrize(
    "dc,d,A",
    [
        (0.1, 0.05, 1),     # block too small
        (0.1, 0.2, 100),    # gap not positive
        (0.1, 0.1, 100),    # gap zero
        (0.5, -0.1, 100),   # channel fraction negative
        (1.5, 1.0, 100),    # channel fraction at 1
    ],
)
def test_rejects_bad_parameters(dc, d, A):
    with pytest.raises(ConfigError):
        hypergeometric_bound(dc, d, A)


def test_overflow_matches_exact_hypergeometric():
    # A=4, B=3: 6 flips over 12 positions, overflow means >= 3 in a block.
    # Exact tail from first principles: P(X >= 3) for X ~ Hyp(12, 6, 4).
    A, B, budget = 4, 3, 6
    n = A * B
    total = math.comb(n, budget)
    exact = sum(
        math.comb(A, x) * math.comb(n - A, budget - x) / total for x in (3, 4)
    )
    res = block_overflow_experiment(A, B, 0.75, 0.5, 4000, RandomStream(b"overflow"))
    assert res.observations == 3 * 4000
    sigma = math.sqrt(exact * (1 - exact) / 4000)  # conservative: trial-level sd
    assert abs(res.frequency - exact) < 5 * sigma
    # Both analytic bounds must sit above the measurement.
    assert res.frequency <= res.bounds.printed
    assert res.frequency <= res.bounds.standard + 5 * sigma


def test_overflow_deterministic():
    a = block_overflow_experiment(32, 4, 0.3, 0.1, 50, RandomStream(7))
    b = block_overflow_experiment(32, 4, 0.3, 0.1, 50, RandomStream(7))
    assert a == b


def test_overflow_rejects_bad_shape():
    with pytest.raises(ConfigError):
        block_overflow_experiment(32, 0, 0.3, 0.1, 10, RandomStream(0))
    with pytest.raises(ConfigError):
        block_overflow_experiment(32, 4, 0.3, 0.1, 0, RandomStream(0))
