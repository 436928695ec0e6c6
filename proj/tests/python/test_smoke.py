import math

import numpy as np
import pytest

import trisw


def test_defaults_round_trip():
    cfg = trisw.load_config({})
    assert cfg["circuit"]["l_x"] == 3.6e-3
    assert cfg["mpc"]["i_sat"] == [17.7, 14.7, 14.7]
    assert trisw.load_config(cfg) == cfg


def test_config_errors_map_to_exceptions():
    with pytest.raises(trisw.ConfigError, match="circuit.bogus"):
        trisw.load_config({"circuit": {"bogus": 1}})
    with pytest.raises(trisw.ConstraintError):
        trisw.load_config({"reference": {"v_m": 150}})
    with pytest.raises(trisw.NumericError):
        trisw.model_bank({"model_variant": "as-printed"})


def test_model_bank_shapes():
    bank = trisw.model_bank()
    assert len(bank) == 8
    phi, gamma = bank[5]
    assert phi.shape == (5, 5)
    assert gamma.shape == (5, 3)


def test_zoh_matches_scipy_expm():
    scipy_linalg = pytest.importorskip("scipy.linalg")
    g, h = trisw.continuous_model(6)
    t_s = 25e-6
    aug = np.zeros((8, 8))
    aug[:5, :5] = g * t_s
    aug[:5, 5:] = h * t_s
    e = scipy_linalg.expm(aug)
    phi, gamma = trisw.model_bank()[6]
    np.testing.assert_allclose(phi, e[:5, :5], rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(gamma, e[:5, 5:], rtol=1e-10, atol=1e-15)


def test_select_switch_state_matches_numpy_enumeration():
    x = np.array([120.0, 80.0, 1.0, 2.0, 0.5])
    u = np.full(3, 100.0)
    refs = [(130.0, 90.0), (135.0, 92.0)]
    chosen, costs = trisw.select_switch_state(x, u, refs, {"mpc": {"lambda": 0.0}}, prev=0)
    bank = trisw.model_bank()
    expected = []
    for phi, gamma in bank:
        z, c = x.copy(), 0.0
        for rb, rc in refs:
            z = phi @ z + gamma @ u
            c += (z[0] - rb) ** 2 + (z[1] - rc) ** 2
        expected.append(c)
    np.testing.assert_allclose(costs, expected, rtol=1e-12)
    c_min = min(costs)
    prev_ties = abs(costs[0] - c_min) <= 1e-12 * max(1.0, c_min)
    assert chosen == (0 if prev_ties else int(np.argmin(costs)))


def test_simulate_short_run():
    out = trisw.simulate({"sim": {"duration": 0.04}})
    assert out["t"].shape == (1601,)
    assert out["x"].shape == (1601, 5)
    np.testing.assert_allclose(out["v_ab"] + out["v_bc"] + out["v_ca"], 0.0, atol=1e-9)
    m = out["metrics"]
    assert max(m["fsw_per_switch"]) <= 20000.0
    assert m["settle_time"] is None


def test_sweep_grid():
    cells = trisw.sweep([1, 2], [0.05, 0.1], {"sim": {"duration": 0.04}})
    assert [(c["n_p"], c["lambda"]) for c in cells] == [(1, 0.05), (1, 0.1), (2, 0.05), (2, 0.1)]
    assert all(c["ok"] for c in cells)


def test_design_and_compare():
    d = trisw.design()
    assert d["f_sw_max"] == 20000.0
    assert d["c_coup_2"] == pytest.approx(66.6667e-6, rel=1e-5)
    rows = trisw.compare(1.0)
    assert [r[1] for r in rows] == [6, 4, 3]
    assert rows[0][2] == pytest.approx(12 / math.sqrt(3), rel=1e-12)


def test_thd_third_harmonic():
    t = np.arange(800) / 40000.0
    x = np.sin(2 * np.pi * 50 * t) + 0.1 * np.sin(2 * np.pi * 150 * t)
    assert trisw.thd(x.tolist(), 50.0, 40000.0) == pytest.approx(0.1, abs=1e-9)
