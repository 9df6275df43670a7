import math

import numpy as np
import pytest

import fermi_landauer as fl
from fermi_landauer.thermal_channel import log_population_ratio, thermal_weight


def test_marginals_vacuum_limit():
    occ = fl.occupation_marginals(0.0, 2.0)
    assert (occ.P0, occ.P1, occ.P2) == (1.0, 0.0, 0.0)
    assert occ.T_R == 0.0
    assert math.isinf(occ.beta)


def test_marginals_at_beta_omega_ln2():
    occ = fl.occupation_marginals(2.0 / math.log(2.0), 2.0)
    assert occ.Z_B == pytest.approx(2.25, rel=1e-14)
    assert occ.P0 == pytest.approx(4.0 / 9.0, rel=1e-14)
    assert occ.P1 == pytest.approx(2.0 / 9.0, rel=1e-14)
    assert occ.P2 == pytest.approx(1.0 / 9.0, rel=1e-14)


def test_marginals_equipartition_limit():
    occ = fl.occupation_marginals(math.inf, 2.0)
    assert occ.beta == 0.0
    for val in (occ.P0, occ.P1, occ.P2):
        assert val == pytest.approx(0.25, rel=1e-14)


@pytest.mark.parametrize("T_R", [1e-6, 0.01, 0.3, 1.0, 7.0, 1e4])
def test_marginal_normalization(T_R):
    occ = fl.occupation_marginals(T_R, 2.2618)
    assert abs(occ.P0 + 2 * occ.P1 + occ.P2 - 1.0) < 1e-14
    assert occ.P0 >= occ.P1 >= occ.P2 > 0.0 or occ.P1 == 0.0


def test_marginals_reject_bad_inputs():
    with pytest.raises(ValueError):
        fl.occupation_marginals(-0.1, 1.0)
    with pytest.raises(ValueError):
        fl.occupation_marginals(1.0, 0.0)


def test_population_conventions():
    assert fl.p_from_temperature(1e12, 2.0) == pytest.approx(0.5, abs=1e-10)
    assert fl.p_from_temperature(1e-6, 2.0) == 0.0
    assert fl.p_from_temperature(1e-6, 2.0, "paper") == pytest.approx(1.0, abs=1e-12)
    assert fl.p_from_temperature(3.0, 2.0) + fl.p_from_temperature(3.0, 2.0, "paper") == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(ValueError):
        fl.p_from_temperature(0.0, 2.0)
    with pytest.raises(ValueError):
        fl.p_from_temperature(1.0, 2.0, "other")


def test_weight_reduction_identity(omega_res):
    # X (1+r)(1+q) = r - q with r, q the detector/field Boltzmann factors
    for T_D in np.linspace(0.1 * omega_res, 10 * omega_res, 7):
        for T_R in np.linspace(0.1 * omega_res, 10 * omega_res, 7):
            p = fl.p_from_temperature(float(T_D), omega_res)
            occ = fl.occupation_marginals(float(T_R), omega_res)
            r = math.exp(-omega_res / T_D)
            q = math.exp(-omega_res / T_R)
            X = thermal_weight(occ, p)
            assert abs(X * (1 + r) * (1 + q) - (r - q)) < 1e-12


def test_landauer_margin_arithmetic():
    assert fl.landauer_margin(0.5, 0.2, 1.0) == pytest.approx(0.3, rel=1e-15)
    assert fl.landauer_margin(0.7, 123.0, 0.0) == 0.7
    with pytest.raises(ValueError):
        fl.landauer_margin(0.1, 0.1, -1.0)


@pytest.fixture(scope="module")
def resonant_setup(cavity, detector_resonant):
    V_B = fl.compute_coupling(
        fl.solve_modes(cavity, 1)[0], detector_resonant, "V"
    )
    return detector_resonant, V_B


def with_p(det, p):
    return fl.DetectorConfig(omega=det.omega, lam=det.lam, T=det.T,
                             worldline=det.worldline, eta=det.eta, p=p)


def test_thermal_equilibrium_is_silent(resonant_setup, omega_res):
    det, V_B = resonant_setup
    for T in (0.4 * omega_res, 2.0 * omega_res):
        p = fl.p_from_temperature(T, omega_res)
        occ = fl.occupation_marginals(T, omega_res)
        res = fl.apply_thermal_channel(occ, V_B, with_p(det, p), B=1,
                                       log_ratio=omega_res / T)
        assert abs(res.dQ) < 1e-14
        assert abs(res.dS_linear) < 1e-14


def test_heat_flows_from_hot_to_cold(resonant_setup, omega_res):
    det, V_B = resonant_setup
    cases = [(0.5, 2.0, 1), (2.0, 0.5, -1), (3.0, 0.2, -1), (0.2, 3.0, 1)]
    for tr_scale, td_scale, sign in cases:
        T_R, T_D = tr_scale * omega_res, td_scale * omega_res
        p = fl.p_from_temperature(T_D, omega_res)
        occ = fl.occupation_marginals(T_R, omega_res)
        res = fl.apply_thermal_channel(occ, V_B, with_p(det, p), B=1,
                                       log_ratio=omega_res / T_D)
        assert math.copysign(1, res.dQ) == sign
        assert res.landauer_margin >= -1e-15 * abs(res.dQ)
        assert res.delta_p == pytest.approx(-res.dQ / omega_res, rel=1e-12)


def test_vacuum_reduction_matches_resonant_formula(resonant_setup, omega_res):
    det, V_B = resonant_setup
    occ = fl.occupation_marginals(0.0, omega_res)
    res = fl.apply_thermal_channel(occ, V_B, det, B=1)
    lam2 = det.lam**2
    expect_dq = lam2 * omega_res * abs(V_B) ** 2 * det.p
    expect_ds = lam2 * math.log((1 - det.p) / det.p) * abs(V_B) ** 2 * det.p
    assert res.dQ == pytest.approx(expect_dq, rel=1e-12)
    assert res.dS_linear == pytest.approx(expect_ds, rel=1e-12)
    assert res.delta_p == pytest.approx(-lam2 * abs(V_B) ** 2 * det.p, rel=1e-12)


def test_convention_covariance(resonant_setup, omega_res):
    det, V_B = resonant_setup
    T_D = 1.7 * omega_res
    occ = fl.occupation_marginals(0.9 * omega_res, omega_res)
    p_g = fl.p_from_temperature(T_D, omega_res, "gibbs")
    p_p = fl.p_from_temperature(T_D, omega_res, "paper")
    assert p_p == pytest.approx(1.0 - p_g, rel=1e-14)
    res_paper = fl.apply_thermal_channel(occ, V_B, with_p(det, p_p), B=1)
    res_flip = fl.apply_thermal_channel(occ, V_B, with_p(det, 1.0 - p_g), B=1)
    assert res_paper.dQ == res_flip.dQ


def test_thermal_field_diag_traces_to_one(resonant_setup, omega_res):
    det, V_B = resonant_setup
    occ = fl.occupation_marginals(1.3 * omega_res, omega_res)
    res = fl.apply_thermal_channel(occ, V_B, with_p(det, 0.37), B=1)
    assert abs(res.field_diag.sum() - 1.0) < 1e-12
    assert res.field_diag_labels == ("00", "10", "01", "11")
    # field energy gain = dQ through the occupation bookkeeping
    energy = omega_res * (res.field_diag[1] + res.field_diag[2] + 2 * res.field_diag[3])
    energy0 = omega_res * (2 * occ.P1 + 2 * occ.P2)
    assert energy - energy0 == pytest.approx(res.dQ, rel=1e-9, abs=1e-15)


def test_detuning_gate(cavity, omega_res):
    det = fl.DetectorConfig(
        omega=omega_res + 0.05, lam=0.01, T=20.0,
        worldline=fl.Worldline.static(0.3, cavity), p=0.4,
    )
    occ = fl.occupation_marginals(omega_res, omega_res)
    with pytest.raises(ValueError):
        fl.apply_thermal_channel(occ, 1.0 + 0j, det, B=1)
    fl.apply_thermal_channel(occ, 1.0 + 0j, det, B=1, allow_detuned=True)


def test_resonance_spec_picks_closest_mode(cavity, modes, omega_res):
    det = fl.DetectorConfig(
        omega=omega_res, lam=0.01, T=20.0,
        worldline=fl.Worldline.static(0.3, cavity),
    )
    spec = fl.ResonanceSpec.pick(tuple(modes), det)
    assert spec.B == 1
    assert spec.omega_B == omega_res
    assert spec.detuning_check == 0.0
    assert spec.resonant


def test_log_population_ratio_edges():
    assert log_population_ratio(0.5) == 0.0
    assert math.isnan(log_population_ratio(0.0))
    assert math.isnan(log_population_ratio(1.0))
