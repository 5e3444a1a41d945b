import numpy as np
import pytest

from aldc.blockcode import BlockCodeSpec
from aldc.channels import ChannelModel, corrupt
from aldc.composed import (
    ComposedSpec,
    LdcStarSpec,
    build_composed_spec,
    deserialize_puzzle,
    ldcstar_decode,
    ldcstar_encode,
    majority_sample_count,
    rb_decode,
    rb_encode,
    serialize_puzzle,
)
from aldc.crypto import RandomStream, puzzle_gen, puzzle_solve
from aldc.errors import ConfigError, DecodeFailure
from aldc.oracle import CountingOracle
from aldc.paldc import Interval

SMALL = BlockCodeSpec(a=16, A=48, symbol_bits=8)


def test_puzzle_wire_roundtrip():
    rng = RandomStream(b"wire")
    for trial in range(5):
        s = rng.substream(trial).bits(128)
        z = puzzle_gen(s, 7 + trial, rng.substream("g", trial))
        back = deserialize_puzzle(serialize_puzzle(z))
        assert back == z
        assert np.array_equal(puzzle_solve(back), s)


def test_puzzle_wire_detects_length_tag_damage():
    rng = RandomStream(b"wire2")
    z = puzzle_gen(rng.bits(128), 5, rng)
    wire = serialize_puzzle(z)
    wire[3] ^= 1  # inside the len-N field
    with pytest.raises(DecodeFailure):
        deserialize_puzzle(wire)


def test_majority_sample_count_formula():
    # ln(2/0.2) / (2 * (1/6)^2) = 41.45 -> 43 after rounding to odd
    assert majority_sample_count(0.2, 1 / 3, copies=100) == 43
    assert majority_sample_count(0.2, 1 / 3, copies=18) == 17  # capped, stepped to odd
    assert majority_sample_count(0.9, 1 / 4, copies=100) == 7
    assert majority_sample_count(0.2, 1 / 3, copies=1) == 1
    with pytest.raises(ConfigError):
        majority_sample_count(0.0, 1 / 3, 10)
    with pytest.raises(ConfigError):
        majority_sample_count(0.2, 0.5, 10)


def star_spec(copies, sample):
    return LdcStarSpec(inner=SMALL, copies=copies, sample_count=sample, delta_star=0.02)


def test_star_encode_is_repetition():
    rng = RandomStream(b"star")
    z = rng.bits(16)
    one = ldcstar_encode(star_spec(1, 1), z)
    five = ldcstar_encode(star_spec(5, 3), z)
    assert five.shape[0] == 5 * 48
    for c in range(5):
        assert np.array_equal(five[c * 48 : (c + 1) * 48], one)


def test_star_clean_decode_single_sample():
    rng = RandomStream(b"star1")
    z = rng.bits(16)
    y = ldcstar_encode(star_spec(4, 1), z)
    oracle = CountingOracle(y)
    got = ldcstar_decode(star_spec(4, 1), oracle, rng.substream("d"))
    assert np.array_equal(got, z)
    assert oracle.tally == 48  # exactly one copy read


def test_star_majority_beats_one_dead_copy():
    rng = RandomStream(b"star3")
    z = rng.bits(16)
    spec = star_spec(10, 3)
    y = ldcstar_encode(spec, z)
    y2 = y.copy()
    y2[: 48] ^= 1  # obliterate copy 0
    for trial in range(30):
        got = ldcstar_decode(spec, CountingOracle(y2), rng.substream(trial))
        assert np.array_equal(got, z)


def test_star_all_copies_dead_fails():
    rng = RandomStream(b"dead")
    z = rng.bits(16)
    spec = star_spec(3, 3)
    y = ldcstar_encode(spec, z) ^ 1
    with pytest.raises(DecodeFailure):
        ldcstar_decode(spec, CountingOracle(y), rng)


def test_star_uniform_half_radius_monte_carlo():
    rng = RandomStream(b"starmc")
    z = rng.bits(16)
    spec = star_spec(6, 3)
    y = ldcstar_encode(spec, z)
    # per-copy worst-case radius is t_sym+1 flips; stay at half of t_sym
    delta = SMALL.t_sym / (2 * SMALL.A)
    ch = ChannelModel("uniform_random", delta)
    failures = 0
    for trial in range(200):
        word = corrupt(ch, y, rng.substream("c", trial))
        got = ldcstar_decode(spec, CountingOracle(word), rng.substream("d", trial))
        if not np.array_equal(got, z):
            failures += 1
    assert failures == 0


@pytest.fixture(scope="module")
def composed_setup():
    spec = build_composed_spec(4 * 256, puzzle_t=32)
    rng = RandomStream(b"composed")
    x = rng.substream("msg").bits(spec.k)
    cw = rb_encode(x, spec, rng.substream("enc"))
    return spec, x, cw


def test_composed_layout(composed_setup):
    spec, _, cw = composed_setup
    assert spec.n_p == 4 * 512
    assert spec.star.inner.a == 464  # 58-byte puzzle wire
    assert spec.star.inner.A == 928
    assert spec.star.copies == 3  # smallest r with r*928 >= 2048
    assert spec.star.sample_count == 3
    assert cw.n == spec.n == spec.n_star + spec.n_p
    assert cw.y_star.shape[0] == spec.n_star


def test_composed_roundtrip_and_exact_tally(composed_setup):
    spec, x, cw = composed_setup
    rng = RandomStream(b"dec")
    a, A = spec.paldc_spec.a, spec.paldc_spec.A
    ell = spec.star.ell_star
    for iv in [Interval(1, a), Interval(a + 1, 3 * a), Interval(5, a + 4), Interval(1, spec.k)]:
        oracle = CountingOracle(cw.bits)
        got = rb_decode(oracle, iv, spec, rng.substream(iv.L, iv.R))
        assert np.array_equal(got, x[iv.L - 1 : iv.R])
        span = (iv.R - 1) // a - (iv.L - 1) // a + 1
        assert oracle.tally == ell + span * A
        assert oracle.tally <= ell + iv.length * spec.alpha_p


def test_composed_encode_deterministic_per_stream(composed_setup):
    spec, x, _ = composed_setup
    a = rb_encode(x, spec, RandomStream(b"det-enc"))
    b = rb_encode(x, spec, RandomStream(b"det-enc"))
    assert np.array_equal(a.bits, b.bits)


def test_composed_budget_split_adversaries(composed_setup):
    spec, x, cw = composed_setup
    rng = RandomStream(b"split")
    budget = spec.budget
    assert budget == min(
        int(spec.star.delta_star * spec.n_star), int(spec.delta_p * spec.n_p)
    )
    n = spec.n
    delta = budget / n
    channels = [
        ChannelModel("left_dump", delta, split=spec.n_star),
        ChannelModel("right_dump", delta, split=spec.n_star),
        ChannelModel("uniform_random", delta),
    ]
    iv = Interval(1, spec.paldc_spec.a)
    for ch in channels:
        failures = 0
        for trial in range(30):
            word = corrupt(ch, cw.bits, rng.substream(ch.kind, trial))
            try:
                got = rb_decode(
                    CountingOracle(word), iv, spec, rng.substream("d", ch.kind, trial)
                )
            except DecodeFailure:
                failures += 1
                continue
            if not np.array_equal(got, x[: iv.length]):
                failures += 1
        assert failures == 0, ch.kind
