import math

import numpy as np
import pytest

import fermi_landauer as fl
from fermi_landauer.errors import PerturbationBreakdownError


def test_binary_entropy_values():
    assert fl.binary_entropy(0.0) == 0.0
    assert fl.binary_entropy(1.0) == 0.0
    assert fl.binary_entropy(0.5) == pytest.approx(math.log(2.0), rel=1e-15)
    assert fl.binary_entropy(0.25) == pytest.approx(0.5623351446188083, rel=1e-14)
    with pytest.raises(ValueError):
        fl.binary_entropy(-0.1)
    with pytest.raises(ValueError):
        fl.binary_entropy(1.1)


@pytest.fixture(scope="module")
def couplings(cavity, detector_resonant):
    return fl.compute_coupling_set(cavity, detector_resonant, 12)


def with_p(det, p):
    return fl.DetectorConfig(omega=det.omega, lam=det.lam, T=det.T,
                             worldline=det.worldline, eta=det.eta, p=p)


def test_half_population_kills_linear_entropy(couplings, detector_resonant):
    res = fl.apply_vacuum_channel(couplings, with_p(detector_resonant, 0.5))
    assert res.dS_linear == 0.0


def test_ground_state_detector_signs(couplings, detector_resonant):
    det = with_p(detector_resonant, 0.0)
    res = fl.apply_vacuum_channel(couplings, det)
    lam2 = det.lam**2
    assert res.delta_p == pytest.approx(lam2 * float(np.sum(np.abs(couplings.W) ** 2)))
    assert res.delta_p >= 0.0
    assert res.dQ >= 0.0
    assert math.isnan(res.dS_linear)
    assert res.dS_exact == pytest.approx(-fl.binary_entropy(res.delta_p), rel=1e-12)
    assert res.dS_exact < 0.0


def test_field_diagonal_is_normalized_probability(couplings, detector_resonant):
    res = fl.apply_vacuum_channel(couplings, detector_resonant)
    assert abs(float(res.field_diag.sum()) - 1.0) < 1e-12
    assert np.all(res.field_diag[1:] >= 0.0)  # the order-lambda^2 weights
    assert len(res.field_diag) == 1 + 2 * couplings.n_max
    assert res.field_diag_labels[0] == "vac"


def test_heat_is_nonnegative_over_random_populations(couplings, detector_resonant):
    rng = np.random.default_rng(3)
    for p in rng.uniform(0.0, 1.0, size=40):
        res = fl.apply_vacuum_channel(couplings, with_p(detector_resonant, float(p)))
        assert res.dQ >= 0.0
        assert res.landauer_margin == res.dQ  # cold reservoir
        assert 0.0 <= detector_resonant.p + res.delta_p <= 1.0


def test_linearized_entropy_converges_to_exact(cavity, omega_res):
    # same amplitudes, two couplings: the formulas differ at O(lambda^4);
    # T = 8 keeps lambda = 0.02 inside the channel's trust region
    det8 = fl.DetectorConfig(
        omega=omega_res, lam=0.02, T=8.0,
        worldline=fl.Worldline.static(0.3, cavity), p=0.3,
    )
    couplings = fl.compute_coupling_set(cavity, det8, 8)
    gaps = {}
    for lam in (0.02, 0.01):
        det = fl.DetectorConfig(
            omega=omega_res, lam=lam, T=8.0, worldline=det8.worldline, p=0.3,
        )
        res = fl.apply_vacuum_channel(couplings, det)
        gaps[lam] = abs(res.dS_exact - res.dS_linear) / lam**2
    assert gaps[0.02] / gaps[0.01] >= 3.0


def test_per_mode_breakdown_sums_to_totals(couplings, detector_resonant):
    res = fl.apply_vacuum_channel(couplings, detector_resonant)
    assert sum(t[1] for t in res.per_mode) == pytest.approx(res.dQ, rel=1e-14)
    assert sum(t[2] for t in res.per_mode) == pytest.approx(res.dS_linear, rel=1e-12)


def test_perturbation_guard_trips_on_strong_coupling(couplings, detector_resonant):
    det = fl.DetectorConfig(
        omega=detector_resonant.omega, lam=0.5, T=detector_resonant.T,
        worldline=detector_resonant.worldline, p=0.6,
    )
    with pytest.raises(PerturbationBreakdownError):
        fl.apply_vacuum_channel(couplings, det)


def test_convergence_report_monotone_and_prefix(cavity, detector_resonant):
    rows = fl.convergence_report(cavity, detector_resonant, [5, 10, 20])
    assert [r.n_max for r in rows] == [5, 10, 20]
    assert rows[0].dQ <= rows[1].dQ <= rows[2].dQ  # nonnegative per-mode terms
    single = fl.apply_vacuum_channel(
        fl.compute_coupling_set(cavity, detector_resonant, 5), detector_resonant
    )
    assert rows[0].dQ == pytest.approx(single.dQ, rel=1e-12)
    with pytest.raises(ValueError):
        fl.convergence_report(cavity, detector_resonant, [10, 5])
    with pytest.raises(ValueError):
        fl.convergence_report(cavity, detector_resonant, [])


def test_cosine_ramp_reaches_negligible_tail(cavity, detector_resonant):
    cs = fl.compute_coupling_set(
        cavity, detector_resonant, 60, fl.SwitchingProfile.cosine(0.1)
    )
    assert cs.tail_estimate < 1e-6


def test_sharp_switching_tail_decay_logged(cavity, omega_res):
    # Sudden switching makes dQ_n fall off only like 1/omega_n; the slope
    # is recorded here for visibility, not asserted against a tolerance.
    det = fl.DetectorConfig(
        omega=omega_res, lam=0.01, T=5.0,
        worldline=fl.Worldline.static(0.3, cavity), p=0.3,
    )
    cs = fl.compute_coupling_set(cavity, det, 200)
    res = fl.apply_vacuum_channel(cs, det)
    dq = np.array([t[1] for t in res.per_mode])
    om = np.array([m.omega for m in cs.modes])
    slope = np.polyfit(np.log(om[49:]), np.log(dq[49:]), 1)[0]
    print(f"sharp-switching per-mode heat decay: dQ_n ~ omega^{slope:.3f}")
    assert cs.tail_estimate > 1e-4  # visibly unconverged, as documented
