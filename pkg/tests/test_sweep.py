import numpy as np

from trinperm.sweep import SweepConfig, config_dict, sample_pairs, verify_theorem


def test_mode_selection():
    assert SweepConfig(4).grid and SweepConfig(4, budget=10).grid
    assert SweepConfig(6).grid and not SweepConfig(6, budget=100).grid
    assert SweepConfig(8).samples == 10 ** 5
    assert config_dict(SweepConfig(8, budget=7))["samples"] == 7


def test_q4_counts():
    out = verify_theorem(SweepConfig(2))
    assert out["pairs"] == {"checked": 45, "pp": 1, "disagreements": 0}
    assert out["oracles"] == ["criterion", "mu", "exhaustive"]
    assert out["ok"]


def test_q16_full_grid():
    out = verify_theorem(SweepConfig(4))
    assert out["pairs"]["checked"] == 3825
    assert out["disagreements"] == 0 and out["counts_equal"]


def test_sampling_is_counter_based():
    a1, u1, v1 = sample_pairs(8, 5, 3, 100)
    a2, u2, v2 = sample_pairs(8, 5, 3, 100)
    assert np.array_equal(a1, a2) and np.array_equal(u1, u2) and np.array_equal(v1, v2)
    a3, _, _ = sample_pairs(8, 5, 4, 100)
    assert not np.array_equal(a1, a3)
    assert a1.min() >= 1 and ((u1 | v1) > 0).all()


def test_sampled_mode_seeded():
    cfg = SweepConfig(7, budget=3000, batch=1000, seed=11)
    first, second = verify_theorem(cfg), verify_theorem(cfg)
    assert first == second
    assert first["mode"] == "sampled" and first["ok"]
    assert first["sufficiency"]["checked"] == 127
    assert first["necessity"]["checked"] <= 3000


def test_workers_match_serial():
    base = SweepConfig(7, budget=2000, batch=500, seed=2)
    par = SweepConfig(7, budget=2000, batch=500, seed=2, workers=2)
    assert verify_theorem(base) == verify_theorem(par)
