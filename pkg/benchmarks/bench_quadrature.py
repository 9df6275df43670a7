"""Timing comparison of the coupling-quadrature backends.

The oscillatory time integrals dominate a channel evaluation; this
script runs the same coupling-set workloads through the numba kernel
and the vectorized numpy fallback and prints both timings.

Usage: python benchmarks/bench_quadrature.py [--repeats N]
"""

import argparse
import time

import fermi_landauer as fl
from fermi_landauer.backend import HAS_NUMBA

WORKLOADS = [
    # (label, n_max, T, switching)
    ("sharp T=20, 40 modes", 40, 20.0, fl.SwitchingProfile.sharp()),
    ("sharp T=5, 120 modes", 120, 5.0, fl.SwitchingProfile.sharp()),
    ("cosine ramp T=20, 60 modes", 60, 20.0, fl.SwitchingProfile.cosine(0.1)),
]


def run(backend: str, n_max: int, T: float, switching, repeats: int) -> float:
    cav = fl.CavityConfig(L=1.0, m=1.0)
    omega = fl.solve_modes(cav, 1)[0].omega
    det = fl.DetectorConfig(
        omega=omega, lam=0.01, T=T, worldline=fl.Worldline.static(0.3, cav), p=0.3
    )
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fl.compute_coupling_set(cav, det, n_max, switching, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    if HAS_NUMBA:
        run("numba", 2, 2.0, fl.SwitchingProfile.sharp(), 1)  # JIT warm-up
    else:
        print("numba unavailable; timing the numpy path only")

    print(f"{'workload':<32}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for label, n_max, T, switching in WORKLOADS:
        times = {b: run(b, n_max, T, switching, args.repeats) for b in backends}
        row = f"{label:<32}" + "".join(f"{times[b]:>11.3f}s" for b in backends)
        if "numba" in times:
            row += f"{times['numpy'] / times['numba']:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
