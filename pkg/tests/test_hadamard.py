import numpy as np
import pytest

from aldc.crypto import RandomStream
from aldc.errors import UsageError
from aldc.hadamard import MAX_K, had_decode, had_encode, had_length
from aldc.oracle import CountingOracle


def subset_parity(x, subset):
    """Independent reference: parity of x restricted to the subset mask."""
    p = 0
    for j in range(len(x)):
        if subset & (1 << j):
            p ^= int(x[j])
    return p


def test_length():
    assert had_length(1) == 1
    assert had_length(12) == 4095
    with pytest.raises(UsageError):
        had_length(0)
    with pytest.raises(UsageError):
        had_length(MAX_K + 1)


def test_encode_matches_subset_parity():
    rng = np.random.default_rng(7)
    for k in (1, 2, 6):
        x = rng.integers(0, 2, size=k).astype(np.uint8)
        y = had_encode(x)
        assert y.shape == (2**k - 1,)
        for s in range(1, 2**k):
            assert y[s - 1] == subset_parity(x, s), (k, s)


def test_encode_is_linear():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = rng.integers(0, 2, size=9).astype(np.uint8)
        b = rng.integers(0, 2, size=9).astype(np.uint8)
        assert np.array_equal(had_encode(a ^ b), had_encode(a) ^ had_encode(b))


def test_decode_clean_word_exact():
    rng = np.random.default_rng(3)
    stream = RandomStream(b"decode-clean")
    k = 10
    x = rng.integers(0, 2, size=k).astype(np.uint8)
    y = had_encode(x)
    for trial in range(300):
        q = int(rng.integers(1, k + 1))
        positions = rng.choice(k, size=q, replace=False)
        oracle = CountingOracle(y)
        got = had_decode(oracle, k, positions, stream.substream("t", trial))
        assert np.array_equal(got, x[positions])
        assert oracle.tally in (q, q + 1)
        assert oracle.distinct_count == oracle.tally


def test_both_query_counts_occur():
    x = np.array([1, 0, 1], dtype=np.uint8)
    y = had_encode(x)
    stream = RandomStream(b"query-count")
    counts = set()
    for trial in range(400):
        oracle = CountingOracle(y)
        had_decode(oracle, 3, [1], stream.substream(trial))
        counts.add(oracle.tally)
    # shift == 0 or shift == {j} gives q probes, anything else q + 1
    assert counts == {1, 2}


def test_probes_individually_uniform():
    # Each probe lands uniformly on the codeword; this is what turns a
    # delta-bounded corruption into a per-probe hit chance of at most
    # delta.  Aggregate chi-square over all probe positions.
    k = 4
    n = had_length(k)
    x = np.array([1, 0, 0, 1], dtype=np.uint8)
    y = had_encode(x)
    stream = RandomStream(b"uniformity")
    hits = np.zeros(n, dtype=np.int64)
    trials = 6000
    total = 0
    for trial in range(trials):
        oracle = CountingOracle(y)
        had_decode(oracle, k, [2], stream.substream(trial))
        queried = sorted(p for p in oracle._tally.positions)
        for p in queried:
            hits[p] += 1
        total += oracle.tally
    expected = total / n
    chi2 = float(((hits - expected) ** 2 / expected).sum())
    # 99.99% quantile of chi-square with 14 dof is about 36.1
    assert chi2 < 40.0, chi2


def test_failure_bound_under_random_corruption():
    k = 8
    n = had_length(k)
    delta = 0.05
    flips = int(delta * n)
    rng = np.random.default_rng(19)
    x = rng.integers(0, 2, size=k).astype(np.uint8)
    y = had_encode(x)
    stream = RandomStream(b"failure-bound")
    trials = 3000
    q = 2
    failures = 0
    for trial in range(trials):
        corrupted = y.copy()
        corrupted[rng.choice(n, size=flips, replace=False)] ^= 1
        positions = rng.choice(k, size=q, replace=False)
        oracle = CountingOracle(corrupted)
        got = had_decode(oracle, k, positions, stream.substream(trial))
        if not np.array_equal(got, x[positions]):
            failures += 1
    bound = (q + 1) * delta
    rate = failures / trials
    slack = 3 * (bound * (1 - bound) / trials) ** 0.5
    assert rate <= bound + slack, (rate, bound)


def test_usage_errors():
    y = had_encode(np.array([1, 0, 1], dtype=np.uint8))
    stream = RandomStream(b"usage")
    with pytest.raises(UsageError):
        had_decode(CountingOracle(y), 3, [0, 0], stream)
    with pytest.raises(UsageError):
        had_decode(CountingOracle(y), 3, [3], stream)
    with pytest.raises(UsageError):
        had_decode(CountingOracle(y[:-1]), 3, [0], stream)
    oracle = CountingOracle(y)
    out = had_decode(oracle, 3, [], stream)
    assert out.size == 0 and oracle.tally == 0
