"""Security-game harness: fixtures, grids, trials, and distinguishers."""

import numpy as np
import pytest

from aldc import (
    MESSAGE_FIXTURES,
    RSE_DISTINGUISHERS,
    ChannelModel,
    ConfigError,
    RandomStream,
    UsageError,
    adp_sample,
    fixture_message,
    gd_sample,
    interval_grid,
    paldc_trial,
    rows_in_code,
    rse_gen,
    run_paldc_sec_game,
    run_rse_game,
)
from aldc.gf2m import gf2_matmul, gf2_rank, gf2_rref


def test_fixture_patterns():
    rng = RandomStream(b"fixtures")
    zeros = fixture_message("zeros", 64, rng)
    ones = fixture_message("ones", 64, rng)
    alt = fixture_message("alternating", 64, rng)
    rand = fixture_message("random", 64, rng)
    assert zeros.sum() == 0 and ones.sum() == 64
    assert all(alt[i] != alt[i + 1] for i in range(63))
    assert 0 < rand.sum() < 64  # astronomically unlikely to be constant
    assert set(MESSAGE_FIXTURES) == {"zeros", "ones", "alternating", "random"}
    with pytest.raises(ConfigError):
        fixture_message("sorted", 8, rng)


def test_interval_grid_contents():
    rng = RandomStream(b"grid")
    grid = interval_grid(1024, 256, 256, rng, unaligned=8)
    aligned = [(iv.L, iv.R) for iv in grid[:4]]
    assert aligned == [(1, 256), (257, 512), (513, 768), (769, 1024)]
    assert len(grid) == 4 + 8
    for iv in grid[4:]:
        assert iv.length == 256
        assert 1 <= iv.L and iv.R <= 1024
        assert (iv.L - 1) % 256 != 0  # genuinely unaligned


def test_interval_grid_degenerate_cases():
    # a == 1: every start is "aligned"; the grid must not spin forever.
    grid = interval_grid(8, 1, 3, RandomStream(0), unaligned=4)
    assert len(grid) == 6 + 4
    # aligned-only form needs no rng
    assert len(interval_grid(512, 256, 256, None, unaligned=0)) == 2
    with pytest.raises(ConfigError):
        interval_grid(512, 256, 256, None, unaligned=4)
    with pytest.raises(ConfigError):
        interval_grid(8, 4, 9, None, unaligned=0)


def test_paldc_trial_shape_and_determinism():
    channel = ChannelModel(kind="uniform_random", delta=0.0)
    a = paldc_trial("onetime", 512, channel, 2, 3, 99, unaligned_per_round=4)
    b = paldc_trial("onetime", 512, channel, 2, 3, 99, unaligned_per_round=4)
    assert a == b
    grid_size = 2 + 4  # aligned windows in k=512 at a=256, plus unaligned
    assert len(a) == 2 * grid_size
    assert {rec.trial for rec in a} == {6, 7}  # trial*q + round
    assert all(rec.success for rec in a)  # zero-budget channel
    assert all(rec.codec == "onetime" and rec.kappa == 256 for rec in a)


def test_paldc_trial_multiround_small_code():
    channel = ChannelModel(kind="uniform_random", delta=0.0)
    params = dict(a=8, b=4, m=5, n=32, t=4)
    recs = paldc_trial("multiround", 64, channel, 2, 0, 5,
                       mr_params=params, unaligned_per_round=2)
    assert len(recs) == 2 * (8 + 2)
    assert all(rec.success for rec in recs)
    # locality never exceeds (2 + 2b/a)/R_rse = 8 on the grid
    assert all(rec.queries <= 8 * rec.length for rec in recs)


def test_game_flags_failure_rates():
    # A generous channel against a tiny epsilon must trip the game.
    hot = run_paldc_sec_game(
        "onetime", 512, ChannelModel(kind="uniform_random", delta=0.25),
        1, 4, 11, epsilon=1e-6, unaligned_per_round=2,
    )
    assert hot.output == 1
    assert hot.worst[0] > 0
    # The same codec under no corruption passes at the same epsilon.
    cold = run_paldc_sec_game(
        "onetime", 512, ChannelModel(kind="uniform_random", delta=0.0),
        1, 4, 11, epsilon=1e-6, unaligned_per_round=2,
    )
    assert cold.output == 0
    summary = cold.summary()
    assert summary["output"] == 0
    assert summary["channels"]["uniform_random"]["failures"] == 0


def test_game_key_reuse_guard():
    with pytest.raises(UsageError):
        run_paldc_sec_game(
            "onetime", 512, ChannelModel(kind="uniform_random", delta=0.0),
            2, 1, 0, force_key_reuse=True, unaligned_per_round=0,
        )


def test_rse_game_null_mode_calm():
    key = rse_gen(2, 2 / 32, rng=RandomStream(b"rse-game"), m=5, n=32, t=4)
    report = run_rse_game(key, 8, 400, 17, null=True)
    assert set(report["distinguishers"]) == set(RSE_DISTINGUISHERS)
    for row in report["distinguishers"].values():
        assert row["within_3_sigma"]
        assert row["advantage"] == pytest.approx(abs(row["p_hat"] - 0.5))


def test_rse_game_real_mode_reports():
    key = rse_gen(2, 2 / 32, rng=RandomStream(b"rse-game"), m=5, n=32, t=4)
    report = run_rse_game(key, 8, 200, 23)
    assert report["reps"] == 200 and report["q"] == 8 and not report["null"]
    assert report["sigma"] == pytest.approx((0.25 / 200) ** 0.5)


def test_adp_sample_witnesses():
    rng = RandomStream(b"adp")
    R, c, witness = adp_sample(24, 48, 5, 0, rng.substream(0), with_witness=True)
    x, e = witness
    assert R.shape == (24, 48) and c.shape == (48,)
    assert int(e.sum()) == 5
    assert np.array_equal(gf2_matmul(x[None, :], R)[0] ^ e, c)
    R1, c1, w1 = adp_sample(24, 48, 5, 1, rng.substream(1), with_witness=True)
    assert w1 is None and c1.shape == (48,)
    with pytest.raises(ConfigError):
        adp_sample(24, 48, 49, 0, rng.substream(2))
    with pytest.raises(ConfigError):
        adp_sample(24, 48, 5, 2, rng.substream(3))


def test_gd_sample_arms():
    rng = RandomStream(b"gd")
    mat, code = gd_sample(5, 4, 1, rng.substream(0), with_witness=True)
    assert mat.shape == (12, 32)
    assert rows_in_code(code, mat)
    rnd, w = gd_sample(5, 4, 0, rng.substream(1), with_witness=True)
    assert w is None and rnd.shape == (12, 32)
    assert gf2_rank(rnd) == 12
    # both arms present the same reduced echelon form
    for sample in (mat, rnd):
        reduced, _ = gf2_rref(sample)
        assert np.array_equal(reduced, sample)
    with pytest.raises(ConfigError):
        gd_sample(3, 4, 0, rng.substream(2))  # k_dim would be negative
