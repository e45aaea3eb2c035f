import math

import numpy as np
import pytest

import ris_mcrb


def test_version():
    assert ris_mcrb.__version__


def test_constants_and_grid():
    c = ris_mcrb.derive_constants(28e9)
    assert c.wavelength == pytest.approx(0.0107069, rel=1e-5)
    grid = ris_mcrb.build_ris_grid(2, 2, 1.0, [0.0, 0.0, 0.0])
    assert len(grid) == 4
    np.testing.assert_allclose(grid.positions[0], [-0.5, -0.5, 0.0])


def test_side_by_side_impedance():
    sc = ris_mcrb.load_scenario()
    z = ris_mcrb.impedance_sweep(sc, [0.1, 0.5])
    assert abs(z[0]) == pytest.approx(0.978, rel=0.05)
    assert abs(z[1]) == pytest.approx(0.0878, rel=0.05)


def test_errors_are_mapped():
    with pytest.raises(ris_mcrb.ValidationError):
        ris_mcrb.load_scenario("num_transmissions: 8\n")
    with pytest.raises(ris_mcrb.ParseError):
        ris_mcrb.load_scenario("bogus: 1\n")
    with pytest.raises(ris_mcrb.Error):
        ris_mcrb.derive_constants(-1.0)
    bad = np.zeros((4, 2))
    with pytest.raises(ris_mcrb.DegenerateDesign):
        ris_mcrb.mcrb_trace(ris_mcrb.RealifiedModel(bad), 1.0)


def test_model_and_bounds():
    sc = ris_mcrb.with_ris_grid(ris_mcrb.load_scenario("num_transmissions: 64\n"), 2, 2, 0.05)
    imp = ris_mcrb.compute_impedances(sc)
    loads = ris_mcrb.sample_loads(sc)
    assert loads.shape == (64, 4)
    b_true = ris_mcrb.build_B(imp.z_rs, imp.zss_self, imp.zss_mutual, loads)
    b_est = ris_mcrb.build_B_uncoupled(imp.z_rs, imp.zss_self, loads)
    d_true = ris_mcrb.realify(b_true, True)
    d_est = ris_mcrb.realify(b_est, False)
    x = ris_mcrb.realify_vec(imp.z_st)
    np.testing.assert_allclose(d_true.D @ x, ris_mcrb.realify_vec(b_true @ imp.z_st), rtol=1e-12)

    gamma = ris_mcrb.dbm_to_watts(40.0) / sc.sigma2
    rep = ris_mcrb.lower_bound(d_est, d_true, x, gamma)
    assert rep.lb == pytest.approx(math.sqrt(rep.tr_mcrb + rep.tr_bias))
    assert rep.tr_bias > 0.0
    matched = ris_mcrb.lower_bound(d_true, d_true, x, gamma)
    assert matched.lb == pytest.approx(ris_mcrb.crlb(d_true, gamma), rel=1e-12)

    r = ris_mcrb.generate_observations(d_true, x, 2.0, 1.0, noiseless=True)
    np.testing.assert_allclose(ris_mcrb.ml_estimate(d_true, r, 2.0), x, rtol=1e-9)


def test_sweep_csv():
    sc = ris_mcrb.load_scenario("num_transmissions: 64\n")
    res = ris_mcrb.run_sweep(ris_mcrb.SweepKind.lb_vs_power, sc, powers_dbm=[0.0, 20.0],
                             spacings_over_lambda=[0.1])
    assert len(res.rows) == 2
    lines = res.to_csv().splitlines()
    assert lines[0] == "p_t_dbm,d_over_lambda,tr_mcrb,tr_bias,lb,crlb"
    assert float(lines[1].split(",")[4]) == res.rows[0].report.lb
