"""Hadamard code with an amortized local decoder.

The codeword for a ``k``-bit message ``x`` lists the parity ``<x, S>``
for every nonempty subset ``S`` of the ``k`` coordinates, so it has
length ``2**k - 1``.  Subsets are identified with integers: bit ``j`` of
the integer says whether coordinate ``j`` is in the subset, and the
codeword position for a nonempty subset ``S`` is ``S - 1``.

The classical local decoder recovers one message bit from two probes.
The amortized decoder below recovers any set ``Q`` of message bits from
at most ``|Q| + 1`` probes by reusing a single random shift: it draws
one subset ``S`` uniformly from all ``2**k`` subsets (including the
empty set, whose parity is 0 and costs no probe) and reads
``<x, S> ^ <x, S ^ {j}>`` for each ``j`` in ``Q``.  Every probed
position is distinct, and each probe is individually uniform over the
codeword, which is what drives the failure bound of ``(|Q| + 1) * delta``
against any adversary that flips at most a ``delta`` fraction of the
codeword.

``k`` is capped at 24 so codewords stay under 16 MiB.
"""

from __future__ import annotations

import numpy as np

from .bitvec import as_bits
from .crypto import RandomStream
from .errors import UsageError
from .oracle import CountingOracle

MAX_K = 24


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise UsageError(f"message length {k} outside supported range [1, {MAX_K}]")


def had_length(k: int) -> int:
    """Codeword length for a ``k``-bit message."""
    _check_k(k)
    return (1 << k) - 1


def had_encode(x) -> np.ndarray:
    """All subset parities of ``x``, nonempty subsets in integer order."""
    x = as_bits(x)
    k = int(x.shape[0])
    _check_k(k)
    mask = 0
    for j in range(k):
        mask |= int(x[j]) << j
    subsets = np.arange(1, 1 << k, dtype=np.uint32)
    return (np.bitwise_count(subsets & np.uint32(mask)) & 1).astype(np.uint8)


def had_decode(oracle: CountingOracle, k: int, positions, rng: RandomStream) -> np.ndarray:
    """Decode message bits ``positions`` (0-based, distinct) from the oracle.

    Returns the decoded bits in the order given.  Probes the oracle at
    ``len(positions)`` or ``len(positions) + 1`` distinct positions.
    """
    _check_k(k)
    if oracle.n != had_length(k):
        raise UsageError(
            f"oracle length {oracle.n} does not match codeword length {had_length(k)}"
        )
    pos = [int(j) for j in positions]
    if not pos:
        return np.zeros(0, dtype=np.uint8)
    if len(set(pos)) != len(pos):
        raise UsageError("decode positions must be distinct")
    for j in pos:
        if not 0 <= j < k:
            raise UsageError(f"decode position {j} outside message range [0, {k})")

    shift = rng.randint_below(1 << k)
    # Empty subsets have parity 0 by convention and cost no probe.  The
    # shifted subset S ^ {j} is empty only when S is the singleton {j},
    # and S itself is empty only when shift == 0; all probed positions
    # are therefore distinct and number |Q| or |Q| + 1.
    probe_positions = []
    if shift != 0:
        probe_positions.append(shift - 1)
    pair_masks = [shift ^ (1 << j) for j in pos]
    for m in pair_masks:
        if m != 0:
            probe_positions.append(m - 1)
    values = oracle.query(np.asarray(probe_positions, dtype=np.int64))
    lookup = {p: int(v) for p, v in zip(probe_positions, values)}
    base = lookup[shift - 1] if shift != 0 else 0
    out = np.empty(len(pos), dtype=np.uint8)
    for i, m in enumerate(pair_masks):
        side = lookup[m - 1] if m != 0 else 0
        out[i] = base ^ side
    return out
