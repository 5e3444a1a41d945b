"""Tail bounds for per-block error overflow under uniform corruption.

When a budget of delta_channel * (A*B) flips lands uniformly on a word
split into B blocks of A bits, the count in one block is hypergeometric.
The probability that a block collects more than a delta_code fraction is
bounded two ways: the expression printed in the source analysis, and the
plain Hoeffding tail, kept side by side so the experiment can check the
measurement against both.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .crypto import RandomStream
from .errors import ConfigError


class BoundPair(NamedTuple):
    printed: float
    standard: float


def hypergeometric_bound(delta_code: float, delta_channel: float, A: int) -> BoundPair:
    """Tail bounds on Pr[one A-bit block receives >= delta_code * A flips].

    printed  = 2^(-2 (((delta_code - delta_channel) A)^2 - 1) / (A + 1))
    standard = exp(-2 (delta_code - delta_channel)^2 A)

    The gap between them is the (A^2 - 1)/(A + 1) vs A exponent; both are
    valid upper tails for the hypergeometric count, and the experiment
    below is expected to sit under each.
    """
    if A < 2:
        raise ConfigError(f"A >= 2 violated: A={A}")
    if not 0 <= delta_channel < 1:
        raise ConfigError(f"0 <= delta_channel < 1 violated: delta_channel={delta_channel}")
    if not delta_code > delta_channel:
        raise ConfigError(
            f"delta_code > delta_channel violated: "
            f"delta_code={delta_code}, delta_channel={delta_channel}"
        )
    gap = delta_code - delta_channel
    printed = 2.0 ** (-2.0 * ((gap * A) ** 2 - 1.0) / (A + 1.0))
    standard = math.exp(-2.0 * gap * gap * A)
    return BoundPair(printed=printed, standard=standard)


class OverflowResult(NamedTuple):
    overflows: int
    observations: int
    frequency: float
    bounds: BoundPair


def block_overflow_experiment(
    A: int,
    B: int,
    delta_code: float,
    delta_channel: float,
    trials: int,
    rng: RandomStream,
) -> OverflowResult:
    """Measure how often a block exceeds its delta_code share of flips.

    Each trial draws floor(delta_channel * A * B) distinct flip positions
    uniformly (the uniform_random channel's position law) and counts, per
    block, whether at least delta_code * A landed inside. All B blocks of
    every trial are observations; their within-trial correlation leaves
    the frequency estimate unbiased.
    """
    bounds = hypergeometric_bound(delta_code, delta_channel, A)
    if B < 1 or trials < 1:
        raise ConfigError(f"B >= 1 and trials >= 1 violated: B={B}, trials={trials}")
    n = A * B
    budget = int(delta_channel * n)
    threshold = delta_code * A
    overflows = 0
    for trial in range(trials):
        pos = rng.substream("overflow", trial).choice_without_replacement(n, budget)
        counts = np.bincount(pos // A, minlength=B)
        overflows += int((counts >= threshold).sum())
    observations = B * trials
    return OverflowResult(
        overflows=overflows,
        observations=observations,
        frequency=overflows / observations,
        bounds=bounds,
    )
