"""Adversarial channel models with hard budget accounting.

A channel is a named corruption strategy plus a budget fraction delta.
Applying it flips at most floor(delta * n) bits — checked after every
single application, because the whole experimental apparatus is
meaningless if a channel can overspend.

The strategies cover the attacks the codecs are designed around:
spread-out noise, a contiguous burst, a dump aimed at one coding block
(the attack that breaks an unkeyed block code and motivates the secret
permutation), and dumps into the left or right region of a composed
codeword (the budget-split adversaries).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitvec import as_bits
from .crypto import RandomStream
from .errors import ConfigError
from .oracle import CountingOracle

CHANNEL_KINDS = (
    "uniform_random",
    "contiguous_burst",
    "block_targeting",
    "left_dump",
    "right_dump",
)


@dataclass(frozen=True)
class ChannelModel:
    """A corruption strategy bound to a budget fraction.

    block_len selects the block grid for block_targeting (required
    there); target_block pins the victim block, otherwise it is drawn
    per application.  split is the boundary index for the dump kinds
    (defaults to n // 2).
    """

    kind: str
    delta: float
    block_len: int | None = None
    target_block: int | None = None
    split: int | None = None

    def __post_init__(self):
        if self.kind not in CHANNEL_KINDS:
            raise ConfigError(f"unknown channel kind {self.kind!r}; choose from {CHANNEL_KINDS}")
        if not 0 <= self.delta <= 1:
            raise ConfigError(f"0 <= delta <= 1 violated: delta={self.delta}")
        if self.kind == "block_targeting" and (self.block_len is None or self.block_len < 1):
            raise ConfigError("block_targeting requires block_len >= 1")


def corrupt(channel: ChannelModel, y, rng: RandomStream) -> np.ndarray:
    """Apply the channel to a codeword; returns a corrupted copy."""
    y = as_bits(y)
    n = int(y.shape[0])
    budget = int(channel.delta * n)
    out = y.copy()
    if budget == 0:
        return out

    if channel.kind == "uniform_random":
        pos = rng.choice_without_replacement(n, budget)
    elif channel.kind == "contiguous_burst":
        start = rng.randint_below(n)
        pos = (start + np.arange(budget, dtype=np.int64)) % n
    elif channel.kind == "block_targeting":
        nblocks = -(-n // channel.block_len)
        blk = channel.target_block if channel.target_block is not None else rng.randint_below(nblocks)
        lo = blk * channel.block_len
        width = min(channel.block_len, n - lo)
        pos = lo + rng.choice_without_replacement(width, min(budget, width))
    elif channel.kind == "left_dump":
        s = channel.split if channel.split is not None else n // 2
        pos = rng.choice_without_replacement(s, min(budget, s))
    else:  # right_dump
        s = channel.split if channel.split is not None else n // 2
        pos = s + rng.choice_without_replacement(n - s, min(budget, n - s))

    out[pos] ^= 1
    spent = int((out != y).sum())
    assert spent <= budget, f"channel {channel.kind} overspent: {spent} > {budget}"
    return out


def corrupted_oracle(channel: ChannelModel, y, rng: RandomStream) -> CountingOracle:
    """Convenience: corrupt and wrap for a decoder in one step."""
    return CountingOracle(corrupt(channel, y, rng))
