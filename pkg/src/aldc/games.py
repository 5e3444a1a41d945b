"""The security games as executable experiments.

Three games live here. The codec game runs an adversarial channel
against a private codec for q rounds and measures per-interval failure
on a fixed interval grid; it outputs 1 exactly when some interval's
measured failure exceeds the configured epsilon. The encryption game
feeds batches of real-or-uniform samples to a fixed zoo of statistical
distinguishers and reports their empirical advantages. The two hardness
games emit challenge instances (structured vs uniform) so the sampling
side of those assumptions can be exercised and range-checked.

None of this proves security: the universal quantifier over efficient
adversaries is replaced by built-in strategies, so a 0 outcome is a
measurement, not a theorem. The plumbing, though, is exact: every
corruption is budget-checked and every query is counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blockcode import DEFAULT_SPEC, BlockCodeSpec
from .channels import ChannelModel, corrupt
from .crypto import RandomStream
from .errors import ConfigError, DecodeFailure
from .gf2m import gf2_matmul, gf2_rank, gf2_rref
from .goppa import RseKey, rse_game_sample, rse_gen
from .oracle import CountingOracle
from .paldc import Interval, mr_decode, mr_encode, mr_keygen, ot_decode, ot_encode, ot_keygen
from .records import ExperimentRecord

MESSAGE_FIXTURES = ("zeros", "ones", "alternating", "random")


def fixture_message(name: str, k: int, rng: RandomStream) -> np.ndarray:
    """Adversary-chosen message patterns; 'random' draws from the stream."""
    if name == "zeros":
        return np.zeros(k, dtype=np.uint8)
    if name == "ones":
        return np.ones(k, dtype=np.uint8)
    if name == "alternating":
        return (np.arange(k, dtype=np.int64) & 1).astype(np.uint8)
    if name == "random":
        return rng.bits(k)
    raise ConfigError(f"unknown message fixture {name!r}; choose from {MESSAGE_FIXTURES}")


def interval_grid(
    k: int,
    a: int,
    kappa: int,
    rng: RandomStream | None = None,
    unaligned: int = 16,
) -> list[Interval]:
    """Block-aligned length-kappa intervals plus random unaligned ones.

    Aligned starts walk the block boundaries; the unaligned extras land
    anywhere a length-kappa window fits without sitting on a boundary.
    This is the measurement grid: the amortized-locality guarantee is
    asserted on length-kappa windows at arbitrary offsets and on aligned
    longer spans, and this grid covers the first family.
    """
    if not 1 <= kappa <= k:
        raise ConfigError(f"1 <= kappa <= k violated: kappa={kappa}, k={k}")
    grid = []
    for start in range(0, k, a):
        if start + kappa <= k:
            grid.append(Interval(start + 1, start + kappa))
    if unaligned > 0:
        if rng is None:
            raise ConfigError("unaligned grid points need an rng")
        room = k - kappa + 1
        # a true unaligned start exists iff room >= 2 and the grid is
        # coarser than one bit; otherwise every window is aligned anyway
        misalignable = room >= 2 and a >= 2
        for _ in range(unaligned):
            L = 1 + rng.randint_below(room)
            while misalignable and (L - 1) % a == 0:
                L = 1 + rng.randint_below(room)
            grid.append(Interval(L, L + kappa - 1))
    return grid


# ---------------- codec security game ----------------


def paldc_trial(
    codec: str,
    k: int,
    channel: ChannelModel,
    q: int,
    trial: int,
    seed: int,
    *,
    paldc_spec: BlockCodeSpec = DEFAULT_SPEC,
    mr_params: dict | None = None,
    unaligned_per_round: int = 16,
    force_key_reuse: bool = False,
) -> list[ExperimentRecord]:
    """One independent game repetition: q rounds of encode/corrupt/decode.

    All randomness hangs off substream (seed, trial), so a sweep can run
    trials in any order or in parallel and still reproduce byte-identical
    records. The one-time codec draws a fresh key every round (its q = 1
    contract); force_key_reuse skips that and lets the codec's own reuse
    guard fire, which is the point of the corresponding test.
    """
    if codec not in ("onetime", "multiround"):
        raise ConfigError(f"unknown codec {codec!r}; choose onetime or multiround")
    root = RandomStream(int(seed)).substream("paldc-game", trial)
    records = []
    key = None
    if codec == "multiround":
        key = mr_keygen(k, q, root.substream("key"), **(mr_params or {}))
    for h in range(q):
        rstream = root.substream("round", h)
        msg = fixture_message(MESSAGE_FIXTURES[h % len(MESSAGE_FIXTURES)], k, rstream.substream("msg"))
        if codec == "onetime":
            if key is None or not force_key_reuse:
                key = ot_keygen(k, rstream.substream("key"), spec=paldc_spec)
            y = ot_encode(key, msg)
        else:
            y = mr_encode(key, msg, rstream.substream("enc"))
        corrupted = corrupt(channel, y, rstream.substream("channel"))
        block_len = key.spec.a if codec == "onetime" else key.a
        grid = interval_grid(
            k, block_len, key.kappa,
            rng=rstream.substream("grid"), unaligned=unaligned_per_round,
        )
        for iv in grid:
            oracle = CountingOracle(corrupted)
            decode = ot_decode if codec == "onetime" else mr_decode
            try:
                got = decode(key, oracle, iv)
                ok = bool(np.array_equal(got, msg[iv.L - 1 : iv.R]))
            except DecodeFailure:
                ok = False
            records.append(ExperimentRecord(
                codec=codec, k=k, n=key.n, delta=channel.delta, kappa=key.kappa,
                trial=trial * q + h, L=iv.L, R=iv.R,
                queries=oracle.tally, success=ok, seed=int(seed),
            ))
    return records


@dataclass
class GameResult:
    """Outcome of the codec game: records, per-interval stats, and the bit."""

    records: list[ExperimentRecord]
    interval_stats: dict
    epsilon: float
    output: int
    worst: tuple

    def summary(self) -> dict:
        per_channel = {}
        for kind, stats in self.interval_stats.items():
            rates = {f"{L}:{R}": fails / total for (L, R), (fails, total) in sorted(stats.items())}
            per_channel[kind] = {
                "decodes": sum(total for _, total in stats.values()),
                "failures": sum(fails for fails, _ in stats.values()),
                "worst_interval_failure": max(rates.values()) if rates else 0.0,
                "interval_failure": rates,
            }
        return {
            "epsilon": self.epsilon,
            "output": self.output,
            "worst": {
                "failure_rate": self.worst[0],
                "channel": self.worst[1],
                "interval": f"{self.worst[2]}:{self.worst[3]}",
            },
            "channels": per_channel,
        }


def run_paldc_sec_game(
    codec: str,
    k: int,
    channels,
    q: int,
    trials: int,
    seed: int,
    *,
    epsilon: float = 0.05,
    paldc_spec: BlockCodeSpec = DEFAULT_SPEC,
    mr_params: dict | None = None,
    unaligned_per_round: int = 16,
    force_key_reuse: bool = False,
) -> GameResult:
    """Run the codec game serially over every channel in the set.

    The game outputs 1 iff some (channel, interval) pair's measured
    failure rate exceeds epsilon; the channel's identity stays out of the
    CSV rows and is reported through the summary only.
    """
    if isinstance(channels, ChannelModel):
        channels = [channels]
    if trials < 1 or q < 1:
        raise ConfigError(f"trials >= 1 and q >= 1 violated: trials={trials}, q={q}")
    all_records: list[ExperimentRecord] = []
    interval_stats: dict = {}
    worst = (0.0, "none", 1, 1)
    output = 0
    for channel in channels:
        stats: dict = {}
        for trial in range(trials):
            recs = paldc_trial(
                codec, k, channel, q, trial, seed,
                paldc_spec=paldc_spec, mr_params=mr_params,
                unaligned_per_round=unaligned_per_round,
                force_key_reuse=force_key_reuse,
            )
            all_records.extend(recs)
            for rec in recs:
                fails, total = stats.get((rec.L, rec.R), (0, 0))
                stats[(rec.L, rec.R)] = (fails + (not rec.success), total + 1)
        interval_stats[channel.kind] = stats
        for (L, R), (fails, total) in stats.items():
            rate = fails / total
            if rate > worst[0]:
                worst = (rate, channel.kind, L, R)
            if rate > epsilon:
                output = 1
    return GameResult(
        records=all_records, interval_stats=interval_stats,
        epsilon=epsilon, output=output, worst=worst,
    )


# ---------------- encryption game ----------------


def _guess_bit_bias(samples: np.ndarray, rng: RandomStream) -> int:
    """Flag a per-position frequency 4 sigma away from fair as structure."""
    q = samples.shape[0]
    z = np.abs(samples.mean(axis=0) - 0.5) * 2.0 * math.sqrt(q)
    return 0 if float(z.max()) > 4.0 else 1


def _guess_weight_histogram(samples: np.ndarray, rng: RandomStream) -> int:
    """Row weights should look Binomial(n, 1/2): mean n/2, variance n/4."""
    q, n = samples.shape
    w = samples.sum(axis=1).astype(np.float64)
    mean_z = (w.mean() - n / 2.0) / (math.sqrt(n / 4.0) / math.sqrt(q))
    if abs(mean_z) > 4.0:
        return 0
    if q >= 8:
        var_z = (w.var(ddof=1) / (n / 4.0) - 1.0) / math.sqrt(2.0 / (q - 1))
        if abs(var_z) > 4.0:
            return 0
    return 1


def _guess_pairwise_xor_rank(samples: np.ndarray, rng: RandomStream) -> int:
    """XORs of real samples live near a k_dim-dimensional coset; uniform
    differences are full rank with overwhelming probability."""
    q, n = samples.shape
    if q < 2:
        return int(rng.bits(1)[0])
    rank = gf2_rank(samples[1:] ^ samples[0])
    return 0 if rank < min(q - 1, n) else 1


def _guess_random(samples: np.ndarray, rng: RandomStream) -> int:
    return int(rng.bits(1)[0])


_DISTINGUISHERS = {
    "bit_bias": _guess_bit_bias,
    "weight_histogram": _guess_weight_histogram,
    "pairwise_xor_rank": _guess_pairwise_xor_rank,
    "random_guess": _guess_random,
}

RSE_DISTINGUISHERS = tuple(_DISTINGUISHERS)


def run_rse_game(
    key: RseKey,
    q: int,
    reps: int,
    seed: int,
    *,
    null: bool = False,
    distinguishers=RSE_DISTINGUISHERS,
) -> dict:
    """Real-vs-uniform game: q samples per repetition share one hidden bit.

    Every distinguisher sees the same batches and guesses the bit; the
    report carries |p_hat - 1/2| with the 3 sigma binomial radius. In
    null mode the batches come from the uniform arm regardless of the
    hidden bit, so every advantage must vanish; that is the desk-scale
    calibration check of the harness itself.
    """
    if q < 1 or reps < 1:
        raise ConfigError(f"q >= 1 and reps >= 1 violated: q={q}, reps={reps}")
    for name in distinguishers:
        if name not in _DISTINGUISHERS:
            raise ConfigError(f"unknown distinguisher {name!r}; choose from {RSE_DISTINGUISHERS}")
    root = RandomStream(int(seed)).substream("rse-game")
    correct = {name: 0 for name in distinguishers}
    for i in range(reps):
        hidden = int(root.substream("bit", i).bits(1)[0])
        arm = 1 if null else hidden
        sstream = root.substream("samples", i)
        samples = np.stack([rse_game_sample(key, arm, sstream) for _ in range(q)])
        for name in distinguishers:
            guess = _DISTINGUISHERS[name](samples, root.substream("guess", i, name))
            correct[name] += int(guess == hidden)
    sigma = math.sqrt(0.25 / reps)
    report = {
        "n": key.n, "k_dim": key.k_dim, "q": q, "reps": reps,
        "null": null, "sigma": sigma,
        "distinguishers": {},
    }
    for name in distinguishers:
        p_hat = correct[name] / reps
        advantage = abs(p_hat - 0.5)
        report["distinguishers"][name] = {
            "correct": correct[name],
            "p_hat": p_hat,
            "advantage": advantage,
            "within_3_sigma": advantage <= 3 * sigma,
        }
    return report


# ---------------- hardness-assumption samplers ----------------


def adp_sample(k_dim: int, n: int, noise_weight: int, b: int, rng: RandomStream,
               *, with_witness: bool = False):
    """One instance of the noisy-product game: (R, c) with c = xR + e or uniform.

    R is drawn fresh per instance; b = 0 is the structured arm with e of
    weight exactly noise_weight, b = 1 the uniform arm. The witness (x, e)
    is available for plumbing checks and must stay hidden in actual play.
    """
    if b not in (0, 1):
        raise ConfigError(f"game bit must be 0 or 1, got {b}")
    if k_dim < 1 or n < 1:
        raise ConfigError(f"k_dim >= 1 and n >= 1 violated: k_dim={k_dim}, n={n}")
    if not 0 <= noise_weight <= n:
        raise ConfigError(f"0 <= noise_weight <= n violated: noise_weight={noise_weight}")
    R = rng.bits(k_dim * n).reshape(k_dim, n)
    if b == 1:
        c, witness = rng.bits(n), None
    else:
        x = rng.bits(k_dim)
        e = np.zeros(n, dtype=np.uint8)
        e[rng.choice_without_replacement(n, noise_weight)] = 1
        c = gf2_matmul(x[None, :], R)[0] ^ e
        witness = (x, e)
    return (R, c, witness) if with_witness else (R, c)


def gd_sample(m: int, t: int, b: int, rng: RandomStream, *, with_witness: bool = False):
    """One instance of the generator game: a (k_dim x 2^m) matrix in rref.

    b = 1 is the Goppa arm (a fresh secret code's generator), b = 0 a
    uniformly random full-rank matrix reduced to the same echelon form so
    the presentation leaks nothing but the row space. The witness is the
    underlying code (b = 1 only), for parity-identity checks.
    """
    if b not in (0, 1):
        raise ConfigError(f"game bit must be 0 or 1, got {b}")
    n = 1 << m
    if b == 1:
        key = rse_gen(0, 0.0, rng=rng, m=m, n=n, t=t)
        mat, witness = key.code.gen, key.code
    else:
        k_dim = n - m * t
        if k_dim < 1:
            raise ConfigError(f"k_dim = n - m*t >= 1 violated: m={m}, t={t}")
        for _ in range(64):
            mat, pivots = gf2_rref(rng.bits(k_dim * n).reshape(k_dim, n))
            if mat.shape[0] == k_dim and len(pivots) == k_dim:
                break
        else:  # pragma: no cover - probability ~ 2^-k_dim per draw
            raise RuntimeError("could not draw a full-rank matrix")
        witness = None
    return (mat, witness) if with_witness else mat
