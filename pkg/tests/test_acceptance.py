"""Acceptance suite: one test per release criterion, at stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass line per
criterion.  Wall-clock limits are asserted inside the tests; the
first-use JIT compilation of the quadrature kernel is warmed by a
session fixture so the budgets measure the algorithms, not LLVM.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

import fermi_landauer as fl
from fermi_landauer import oracle


def report(criterion: str, detail: str) -> None:
    print(f"[PASS] {criterion}: {detail}")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    cav = fl.CavityConfig(L=1.0, m=1.0)
    det = fl.DetectorConfig(
        omega=1.0, lam=0.01, T=1.0, worldline=fl.Worldline.static(0.5, cav)
    )
    fl.compute_coupling(fl.solve_modes(cav, 1)[0], det, "W")


@pytest.fixture(scope="session")
def resonant_scenario():
    """Default scenario shared by criteria 4-8: first mode on resonance."""
    cav = fl.CavityConfig(L=1.0, m=1.0)
    omega = fl.solve_modes(cav, 1)[0].omega
    wl = fl.Worldline.static(0.3, cav)
    det = fl.DetectorConfig(omega=omega, lam=0.01, T=20.0, worldline=wl, p=0.6)
    return cav, det


def test_criterion_1_spectrum_correctness():
    t0 = time.perf_counter()
    for m in (0.0, 0.1, 1.0, 10.0):
        for L in (0.5, 1.0, 2.0):
            cav = fl.CavityConfig(L=L, m=m)
            modes = fl.solve_modes(cav, 50)
            for md in modes:
                assert abs(fl.boundary_residual(md.k, cav)) < 1e-12
                if m > 0:
                    assert abs(md.omega * abs(math.sin(md.k * L)) - md.k) < 1e-10
    near_massless = fl.solve_modes(fl.CavityConfig(L=1.0, m=1e-8), 50)
    for md in near_massless:
        assert abs(md.k - (md.n - 0.5) * math.pi) < 1e-6
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    report("criterion 1 (spectrum)", f"12 cavities x 50 modes in {elapsed:.3f}s")


def test_criterion_2_orthonormality():
    t0 = time.perf_counter()
    cav = fl.CavityConfig(L=1.0, m=1.0)
    modes = fl.solve_modes(cav, 8)
    gram = fl.gram_matrix(modes, cav)
    dev = float(np.max(np.abs(gram - np.eye(16))))
    elapsed = time.perf_counter() - t0
    assert dev < 1e-8
    assert elapsed < 5.0
    report("criterion 2 (orthonormality)", f"16x16 Gram dev {dev:.2e} in {elapsed:.2f}s")


def test_criterion_3_coupling_oracle():
    rng = np.random.default_rng(20250809)
    worst = 0.0
    for _ in range(50):
        m = float(rng.uniform(0.0, 3.0)) if rng.random() > 0.15 else 0.0
        L = float(rng.uniform(0.5, 2.0))
        cav = fl.CavityConfig(L=L, m=m)
        md = fl.solve_modes(cav, int(rng.integers(1, 9)))[-1]
        det = fl.DetectorConfig(
            omega=float(rng.uniform(0.3, 5.0)),
            lam=0.01,
            T=float(rng.uniform(1.0, 20.0)),
            worldline=fl.Worldline.static(float(rng.uniform(0.05, L - 0.05)), cav),
        )
        for kind in ("W", "V"):
            quad = fl.compute_coupling(md, det, kind)
            closed = fl.closed_form_static(md, det, kind)
            worst = max(worst, abs(quad - closed) / abs(closed))
    assert worst < 1e-9
    report("criterion 3 (coupling oracle)", f"50 draws, worst rel err {worst:.2e}")


def test_criterion_4_resonance_dominance(resonant_scenario):
    cav, det = resonant_scenario
    md = fl.solve_modes(cav, 1)[0]
    others = fl.solve_modes(cav, 6)[1:]
    for T in (5.0, 10.0, 20.0):
        d1 = fl.DetectorConfig(omega=det.omega, lam=det.lam, T=T,
                               worldline=det.worldline, p=det.p)
        d2 = fl.DetectorConfig(omega=det.omega, lam=det.lam, T=2 * T,
                               worldline=det.worldline, p=det.p)
        v1 = abs(fl.compute_coupling(md, d1, "V")) ** 2
        v2 = abs(fl.compute_coupling(md, d2, "V")) ** 2
        assert v2 / v1 == pytest.approx(4.0, abs=1e-6)
        for other in others:
            amp = abs(fl.smear_amplitude(other, "h", det.worldline.x0, det.eta))
            cap = 4.0 * amp**2 / (det.omega - other.omega) ** 2
            for d in (d1, d2):
                assert abs(fl.compute_coupling(other, d, "V")) ** 2 <= cap * (1 + 1e-10)
    report("criterion 4 (resonance dominance)", "|V_B|^2 ~ T^2, others capped")


def test_criterion_5_vacuum_channel():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(5):
        m = float(rng.uniform(0.0, 2.0))
        L = float(rng.uniform(0.6, 1.8))
        cav = fl.CavityConfig(L=L, m=m)
        wl = fl.Worldline.static(float(rng.uniform(0.05, L - 0.05)), cav)
        base = fl.DetectorConfig(
            omega=float(rng.uniform(0.5, 6.0)), lam=0.01,
            T=float(rng.uniform(2.0, 10.0)), worldline=wl,
        )
        couplings = fl.compute_coupling_set(cav, base, 40)
        for p in rng.uniform(0.0, 1.0, size=20):
            det = fl.DetectorConfig(omega=base.omega, lam=base.lam, T=base.T,
                                    worldline=wl, p=float(p))
            res = fl.apply_vacuum_channel(couplings, det)
            assert res.dQ >= 0.0
            assert abs(float(res.field_diag.sum()) - 1.0) < 1e-12
            checked += 1
    assert checked == 100

    cav = fl.CavityConfig(L=1.0, m=1.0)
    omega = fl.solve_modes(cav, 1)[0].omega
    wl = fl.Worldline.static(0.3, cav)
    det8 = fl.DetectorConfig(omega=omega, lam=0.02, T=8.0, worldline=wl, p=0.3)
    couplings = fl.compute_coupling_set(cav, det8, 40)
    gaps = {}
    for lam in (0.02, 0.01):
        det = fl.DetectorConfig(omega=omega, lam=lam, T=8.0, worldline=wl, p=0.3)
        res = fl.apply_vacuum_channel(couplings, det)
        gaps[lam] = abs(res.dS_exact - res.dS_linear) / lam**2
    ratio = gaps[0.02] / gaps[0.01]
    assert ratio >= 3.0
    report("criterion 5 (vacuum channel)",
           f"dQ >= 0 on 100 configs, entropy-gap ratio {ratio:.2f}")


def test_criterion_6_thermal_channel(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "fermi_landauer", "thermal",
         "--L", "1", "--mass", "1", "--omega", "mode:1", "--lambda", "0.01",
         "--T", "20", "--x0", "0.3", "--n-max", "4", "--grid", "20x20",
         "--output", str(tmp_path / "t")],
        capture_output=True, text=True,
    )
    assert res.returncode == 0, res.stderr
    lines = [l for l in open(tmp_path / "t.sweep.csv").read().splitlines()
             if not l.startswith("#")]
    cols = lines[0].split(",")
    rows = [dict(zip(cols, map(float, l.split(",")))) for l in lines[1:]]
    assert len(rows) == 400
    for r in rows:
        assert r["landauer_margin"] >= -1e-15 * abs(r["dQ"])
        if r["T_D"] != r["T_R"]:
            assert math.copysign(1.0, r["dQ"]) == math.copysign(1.0, r["T_D"] - r["T_R"])
        else:
            assert abs(r["dQ"]) < 1e-14
            assert abs(r["dS_linear"]) < 1e-14

    # cold-reservoir limit against the resonant-mode vacuum expression
    cav = fl.CavityConfig(L=1.0, m=1.0)
    md = fl.solve_modes(cav, 1)[0]
    wl = fl.Worldline.static(0.3, cav)
    det = fl.DetectorConfig(omega=md.omega, lam=0.01, T=20.0, worldline=wl, p=0.35)
    V_B = fl.compute_coupling(md, det, "V")
    occ = fl.occupation_marginals(1e-8, md.omega)
    out = fl.apply_thermal_channel(occ, V_B, det, B=1)
    lam2 = det.lam**2
    want_dq = lam2 * md.omega * abs(V_B) ** 2 * det.p
    want_dp = -lam2 * abs(V_B) ** 2 * det.p
    want_ds = lam2 * math.log((1 - det.p) / det.p) * abs(V_B) ** 2 * det.p
    assert abs(out.dQ - want_dq) <= 1e-10 * abs(want_dq)
    assert abs(out.delta_p - want_dp) <= 1e-10 * abs(want_dp)
    assert abs(out.dS_linear - want_ds) <= 1e-10 * abs(want_ds)
    report("criterion 6 (thermal channel)",
           "20x20 grid: margin >= -1e-15|dQ|, heat follows the gradient")


@pytest.fixture(scope="session")
def oracle_runs(resonant_scenario):
    cav, det = resonant_scenario
    space = oracle.build_space(cav, 2)
    T_R = det.omega / math.log(2.0)  # beta * omega_B = ln 2
    fields = {
        "vacuum": oracle.vacuum_field_diagonal(space),
        "thermal": oracle.thermal_field_diagonal(space, T_R),
    }
    t0 = time.perf_counter()
    runs = {}
    for name, field_diag in fields.items():
        for lam in (0.01, 0.005):
            d = fl.DetectorConfig(omega=det.omega, lam=lam, T=det.T,
                                  worldline=det.worldline, p=det.p)
            st0 = oracle.product_state(d.p, field_diag)
            st1 = oracle.evolve_exact(space, d, st0, dt=d.T / 4096)
            exact = oracle.measure_channel(st0, st1, space)
            couplings = fl.compute_coupling_set(cav, d, 2)
            if name == "vacuum":
                pert = fl.apply_vacuum_channel(couplings, d)
            else:
                occ = fl.occupation_marginals(T_R, det.omega)
                pert = fl.apply_thermal_channel(occ, couplings.V[0], d, B=1)
            runs[(name, lam)] = (exact, pert, st1)
    return cav, det, space, runs, time.perf_counter() - t0


def test_criterion_7_oracle_equivalence(oracle_runs):
    _, _, _, runs, elapsed = oracle_runs
    details = []
    for name in ("vacuum", "thermal"):
        rel = {}
        for lam in (0.01, 0.005):
            (dp_e, dq_e, _), pert, _ = runs[(name, lam)]
            rel[lam] = (
                abs(dp_e - pert.delta_p) / abs(dp_e),
                abs(dq_e - pert.dQ) / abs(dq_e),
            )
        r_dp = rel[0.01][0] / rel[0.005][0]
        r_dq = rel[0.01][1] / rel[0.005][1]
        assert 3.0 <= r_dp <= 5.0, (name, r_dp)
        assert 3.0 <= r_dq <= 5.0, (name, r_dq)
        details.append(f"{name}: dp x{r_dp:.2f}, dQ x{r_dq:.2f}")
    assert elapsed < 60.0
    report("criterion 7 (oracle equivalence)",
           "; ".join(details) + f" ({elapsed:.1f}s)")


def test_criterion_8_oracle_integrity(resonant_scenario, oracle_runs):
    cav, det = resonant_scenario
    _, _, space, runs, _ = oracle_runs
    for (_, _), (_, _, st1) in runs.items():
        assert st1.trace_drift < 1e-10

    space1 = oracle.build_space(cav, 1)
    pure_det = fl.DetectorConfig(omega=det.omega, lam=0.01, T=det.T,
                                 worldline=det.worldline, p=1.0)
    st0 = oracle.product_state(1.0, oracle.vacuum_field_diagonal(space1))
    st1 = oracle.evolve_exact(space1, pure_det, st0, dt=det.T / 2048)
    purity_drift = abs(st1.purity() - 1.0)
    assert purity_drift < 1e-9

    st0 = oracle.product_state(det.p, oracle.vacuum_field_diagonal(space))
    rho = {}
    for n in (256, 512, 1024):
        rho[n] = oracle.evolve_exact(space, det, st0, dt=det.T / n).rho
    contraction = float(
        np.abs(rho[256] - rho[512]).sum() / np.abs(rho[512] - rho[1024]).sum()
    )
    assert 3.5 <= contraction <= 4.5
    report("criterion 8 (oracle integrity)",
           f"purity drift {purity_drift:.1e}, dt contraction {contraction:.2f}")


SCENARIO_ARGS = {
    "modes": ["modes", "--L", "1", "--mass", "1", "--n-max", "5"],
    "vacuum": ["vacuum", "--L", "1", "--mass", "1", "--omega", "mode:1",
               "--lambda", "0.01", "--T", "5", "--x0", "0.3", "--p", "0.3",
               "--n-max", "6"],
    "thermal": ["thermal", "--L", "1", "--mass", "1", "--omega", "mode:1",
                "--lambda", "0.01", "--T", "20", "--x0", "0.3", "--n-max", "3",
                "--grid", "4x4"],
    "oracle": ["oracle", "--L", "1", "--mass", "1", "--omega", "mode:1",
               "--lambda", "0.01", "--T", "4", "--x0", "0.3", "--p", "0.6",
               "--n-modes", "1", "--dt", "0.015625"],
    "sweep": ["sweep", "--L", "1", "--mass", "1", "--omega", "1.9",
              "--lambda", "0.01", "--T", "4", "--x0", "0.3", "--p", "0.2",
              "--n-max", "3", "--axis", "detector.T=2:6:3"],
}


def test_criterion_9_determinism(tmp_path):
    for name, args in SCENARIO_ARGS.items():
        outputs = {}
        for tag in ("r1", "r2"):
            out = tmp_path / f"{name}-{tag}"
            res = subprocess.run(
                [sys.executable, "-m", "fermi_landauer", *args,
                 "--seed", "7", "--output", str(out)],
                capture_output=True, text=True,
            )
            assert res.returncode == 0, (name, res.stderr)
            outputs[tag] = sorted(res.stdout.split())
        assert len(outputs["r1"]) >= 1
        for p1, p2 in zip(outputs["r1"], outputs["r2"]):
            b1 = open(p1, "rb").read()
            b2 = open(p2, "rb").read()
            assert b1 == b2, f"{name}: {p1} differs from {p2}"
    report("criterion 9 (determinism)",
           "all five scenarios byte-identical across reruns")
