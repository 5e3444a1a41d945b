"""Query-counting access to a stored word.

Decoders never touch codewords directly; they go through a
:class:`CountingOracle` so that every probe is tallied.  Locality claims
in this package are statements about those tallies, so the oracle is the
single place where counting happens and the only place that needs to be
trusted by the tests.

A composed decoder (one that reads a prefix region through one codec and
a suffix region through another) can hand each sub-decoder a *view* of
the word.  Views translate indices and share the parent's tally, so the
total count reflects every probe made anywhere in the tree.
"""

from __future__ import annotations

import numpy as np

from .bitvec import as_bits


class _Tally:
    """Shared mutable counter for an oracle and all of its views."""

    __slots__ = ("count", "positions")

    def __init__(self) -> None:
        self.count = 0
        self.positions: set[int] = set()


class CountingOracle:
    """Read access to a bit string with exact query accounting.

    ``query`` counts every requested index, including repeats; decoders
    that promise distinct probes are checked against ``distinct_count``.
    The oracle never copies or mutates the word, so callers must not
    modify it while decoding is in progress.
    """

    def __init__(self, word, *, _base=None, _offset: int = 0, _tally=None):
        if _base is None:
            self._word = as_bits(word)
            self._offset = 0
            self._length = int(self._word.shape[0])
            self._tally = _Tally()
        else:
            self._word = _base
            self._offset = _offset
            self._length = int(word)
            self._tally = _tally

    @property
    def n(self) -> int:
        return self._length

    @property
    def tally(self) -> int:
        return self._tally.count

    @property
    def distinct_count(self) -> int:
        return len(self._tally.positions)

    def reset_tally(self) -> None:
        self._tally.count = 0
        self._tally.positions.clear()

    def query(self, indices) -> np.ndarray:
        idx = np.atleast_1d(np.asarray(indices, dtype=np.int64))
        if idx.ndim != 1:
            raise ValueError("query indices must be one-dimensional")
        if idx.size and (idx.min() < 0 or idx.max() >= self._length):
            raise IndexError(
                f"query index out of range for oracle of length {self._length}"
            )
        absolute = idx + self._offset
        self._tally.count += int(idx.size)
        self._tally.positions.update(absolute.tolist())
        return self._word[absolute]

    def view(self, start: int, length: int) -> "CountingOracle":
        """A sub-oracle over ``[start, start+length)`` sharing this tally."""
        if start < 0 or length < 0 or start + length > self._length:
            raise ValueError(
                f"view [{start}, {start + length}) outside oracle of length {self._length}"
            )
        return CountingOracle(
            length,
            _base=self._word,
            _offset=self._offset + start,
            _tally=self._tally,
        )
