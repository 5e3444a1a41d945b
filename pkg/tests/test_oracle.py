import numpy as np
import pytest

from aldc.oracle import CountingOracle


def test_query_returns_word_bits_and_counts():
    word = np.array([1, 0, 1, 1, 0, 0, 1], dtype=np.uint8)
    o = CountingOracle(word)
    got = o.query([0, 2, 5])
    assert got.tolist() == [1, 1, 0]
    assert o.tally == 3
    assert o.distinct_count == 3


def test_repeated_queries_count_every_probe():
    o = CountingOracle(np.zeros(4, dtype=np.uint8))
    o.query([1, 1, 2])
    o.query([2])
    assert o.tally == 4
    assert o.distinct_count == 2


def test_out_of_range_rejected():
    o = CountingOracle(np.zeros(4, dtype=np.uint8))
    with pytest.raises(IndexError):
        o.query([4])
    with pytest.raises(IndexError):
        o.query([-1])
    assert o.tally == 0


def test_view_translates_and_shares_tally():
    word = np.arange(10) % 2
    o = CountingOracle(word.astype(np.uint8))
    v = o.view(4, 3)
    assert v.n == 3
    got = v.query([0, 2])
    assert got.tolist() == [word[4], word[6]]
    assert o.tally == 2
    o.query([0])
    assert v.tally == 3
    with pytest.raises(IndexError):
        v.query([3])
    with pytest.raises(ValueError):
        o.view(8, 3)


def test_reset_tally():
    o = CountingOracle(np.zeros(4, dtype=np.uint8))
    o.query([0, 1])
    o.reset_tally()
    assert o.tally == 0
    assert o.distinct_count == 0
