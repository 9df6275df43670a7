"""First-order coupling amplitudes between the detector and each cavity mode.

For a detector with gap Omega switched on over [0, T] along a worldline
x(t), every mode n contributes two complex amplitudes,

    W_n = integral_0^T  e^{-i (Omega + w_n) t}  etabar.f_n[x(t)]  chi(t) dt
    V_n = integral_0^T  e^{+i (Omega - w_n) t}  hbar_n[x(t)].eta  chi(t) dt

W_n is the counter-rotating channel (detector excitation together with
particle creation, always oscillatory and bounded), V_n the co-rotating
one (detector de-excitation against antiparticle creation), which grows
linearly in T when a mode is tuned to the gap.  The reference spinor eta
is an ordinary normalized c-number two-spinor; only |W_n|^2 and |V_n|^2
feed the channels downstream, so this is the minimal concrete reading of
the spinor-valued smearing.

Both amplitudes are computed by oscillation-capped composite Simpson
quadrature; `closed_form_static` provides the independent analytic route
for a static detector under sharp switching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import get_segment_kernel
from .quadrature import oscillatory_segment
from .spectrum import CavityConfig, Mode, eval_mode_spinor, solve_modes

# |Omega - w_n| * T below this switches the closed form to its limit value.
RESONANCE_EPS = 1e-8

_QUAD_REL_TOL = 1e-12


@dataclass(frozen=True)
class SwitchingProfile:
    """Time window multiplying the interaction: sharp step or cosine ramp."""

    kind: str = "sharp"
    ramp: float = 0.0

    def __post_init__(self) -> None:
        if self.kind == "sharp":
            return
        if self.kind == "cosine":
            if not 0.0 < self.ramp < 0.5:
                raise ValueError(
                    f"cosine ramp fraction must lie in (0, 0.5), got {self.ramp}"
                )
            return
        raise ValueError(f"unknown switching kind {self.kind!r}")

    @classmethod
    def sharp(cls) -> "SwitchingProfile":
        return cls(kind="sharp")

    @classmethod
    def cosine(cls, ramp: float) -> "SwitchingProfile":
        return cls(kind="cosine", ramp=ramp)

    @classmethod
    def parse(cls, text: str) -> "SwitchingProfile":
        """Parse "sharp" or "cosine:<ramp>" (CLI / config syntax)."""
        if text == "sharp":
            return cls.sharp()
        if text.startswith("cosine:"):
            return cls.cosine(float(text.split(":", 1)[1]))
        raise ValueError(f"switching must be 'sharp' or 'cosine:<r>', got {text!r}")

    def label(self) -> str:
        return self.kind if self.kind == "sharp" else f"cosine:{self.ramp:g}"

    def segments(self, T: float) -> list[tuple[float, float, int, float, float]]:
        """Smooth pieces as (a, b, chi_flag, c0, c1) with chi = 0.5(1-cos(c0 t + c1))."""
        if self.kind == "sharp":
            return [(0.0, T, 0, 0.0, 0.0)]
        rT = self.ramp * T
        w = math.pi / rT
        return [
            (0.0, rT, 1, w, 0.0),
            (rT, T - rT, 0, 0.0, 0.0),
            (T - rT, T, 1, -w, w * T),
        ]

    def value(self, t: float, T: float) -> float:
        """chi(t); zero outside [0, T]."""
        if t < 0.0 or t > T:
            return 0.0
        if self.kind == "sharp":
            return 1.0
        rT = self.ramp * T
        if t < rT:
            return 0.5 * (1.0 - math.cos(math.pi * t / rT))
        if t > T - rT:
            return 0.5 * (1.0 - math.cos(math.pi * (T - t) / rT))
        return 1.0


@dataclass(frozen=True)
class Worldline:
    """Detector trajectory inside the cavity: static or uniform velocity."""

    kind: str
    x0: float
    v: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("static", "uniform"):
            raise ValueError(f"worldline kind must be static|uniform, got {self.kind!r}")
        if self.kind == "static" and self.v != 0.0:
            raise ValueError("static worldline cannot carry a velocity")
        if abs(self.v) >= 1.0:
            raise ValueError(f"|velocity| must be < 1 (units c=1), got {self.v}")

    @classmethod
    def static(cls, x0: float, cavity: CavityConfig) -> "Worldline":
        if not 0.0 <= x0 <= cavity.L:
            raise ValueError(f"detector position {x0} outside cavity [0, {cavity.L}]")
        return cls(kind="static", x0=x0)

    @classmethod
    def uniform(
        cls, x0: float, v: float, cavity: CavityConfig, T: float
    ) -> "Worldline":
        # Linear motion: containment over [0, T] is containment of the endpoints.
        for t, x in ((0.0, x0), (T, x0 + v * T)):
            if not 0.0 <= x <= cavity.L:
                raise ValueError(
                    f"worldline leaves the cavity: x({t:g}) = {x:g} not in [0, {cavity.L}]"
                )
        return cls(kind="uniform", x0=x0, v=v)

    def position(self, t: float) -> float:
        return self.x0 + self.v * t


@dataclass(frozen=True)
class DetectorConfig:
    """Two-level detector: gap, coupling, window, path, spinor, population."""

    omega: float
    lam: float
    T: float
    worldline: Worldline
    eta: tuple[complex, complex] = (1.0 + 0.0j, 0.0 + 0.0j)
    p: float = 0.0

    def __post_init__(self) -> None:
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"detector gap must be positive, got {self.omega}")
        if not (self.lam >= 0.0 and math.isfinite(self.lam)):
            raise ValueError(f"coupling strength must be >= 0, got {self.lam}")
        if not (self.T > 0.0 and math.isfinite(self.T)):
            raise ValueError(f"interaction span must be positive, got {self.T}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"initial excited population must lie in [0, 1], got {self.p}")
        e0, e1 = complex(self.eta[0]), complex(self.eta[1])
        nrm = math.sqrt(abs(e0) ** 2 + abs(e1) ** 2)
        if nrm == 0.0 or not math.isfinite(nrm):
            raise ValueError("reference spinor must be nonzero and finite")
        object.__setattr__(self, "eta", (e0 / nrm, e1 / nrm))


def smear_amplitude(
    mode: Mode, kind: str, x: float, eta: tuple[complex, complex]
) -> complex:
    """Spinor contraction at x: etabar.f_n for kind "f", hbar_n.eta for "h".

    gamma0 swaps the components, so the contraction pairs eta's upper
    component with the spinor's lower one and vice versa.
    """
    sp = eval_mode_spinor(mode, kind, x)
    if kind == "f":
        return np.conj(eta[0]) * sp.lower + np.conj(eta[1]) * sp.upper
    return sp.lower * eta[0] + sp.upper * eta[1]


def _phase_and_coeffs(
    mode: Mode, detector: DetectorConfig, kind: str
) -> tuple[float, complex, complex]:
    e0, e1 = detector.eta
    N = mode.norm
    if kind == "W":
        return -(detector.omega + mode.omega), N * np.conj(e0), N * np.conj(e1)
    if kind == "V":
        return detector.omega - mode.omega, N * e0, -N * e1
    raise ValueError(f"coupling kind must be 'W' or 'V', got {kind!r}")


def compute_coupling(
    mode: Mode,
    detector: DetectorConfig,
    kind: str,
    switching: SwitchingProfile = SwitchingProfile.sharp(),
    *,
    tol: float | None = None,
    backend: str | None = None,
) -> complex:
    """One coupling amplitude by quadrature along the worldline."""
    phi, A, B = _phase_and_coeffs(mode, detector, kind)
    cav = mode.cavity
    mok = cav.m / mode.k
    wok = mode.omega / mode.k
    wl = detector.worldline
    amp_bound = abs(A) * (1.0 + mok) + abs(B) * wok
    if tol is None:
        tol = max(_QUAD_REL_TOL * amp_bound * detector.T, 1e-300)
    kernel = get_segment_kernel(backend)
    total = 0.0 + 0.0j
    segs = switching.segments(detector.T)
    for a, b, flag, c0, c1 in segs:
        freq = abs(phi) + mode.k * abs(wl.v) + (abs(c0) if flag else 0.0)
        seg_tol = tol * max((b - a) / detector.T, 1e-3)
        total += oscillatory_segment(
            kernel,
            a,
            b,
            freq,
            seg_tol,
            (phi, mode.k, mok, wok, A, B, wl.x0, wl.v, flag, c0, c1),
        )
    return total


def closed_form_static(mode: Mode, detector: DetectorConfig, kind: str) -> complex:
    """Analytic amplitude for a static detector under sharp switching.

    Serves as the independent oracle for the quadrature route; the
    near-resonant V amplitude is replaced by its limit value amp*T to
    avoid cancellation in (e^{i psi T} - 1)/psi.
    """
    if detector.worldline.kind != "static":
        raise ValueError("closed form requires a static worldline")
    x0 = detector.worldline.x0
    T = detector.T
    if kind == "W":
        amp = smear_amplitude(mode, "f", x0, detector.eta)
        phi = detector.omega + mode.omega
        return amp * (1.0 - np.exp(-1j * phi * T)) / (1j * phi)
    if kind == "V":
        amp = smear_amplitude(mode, "h", x0, detector.eta)
        psi = detector.omega - mode.omega
        if abs(psi) * T < RESONANCE_EPS:
            return amp * T
        return amp * (np.exp(1j * psi * T) - 1.0) / (1j * psi)
    raise ValueError(f"coupling kind must be 'W' or 'V', got {kind!r}")


@dataclass(frozen=True)
class CouplingSet:
    """Amplitudes W_n, V_n for modes 1..n_max plus a truncation diagnostic.

    tail_estimate is the share of the energy-weighted amplitude sum
    sum_n (|W_n|^2 + |V_n|^2) w_n carried by the last ceil(n_max/5)
    modes; large values flag an unconverged truncation.
    """

    modes: tuple[Mode, ...]
    W: np.ndarray
    V: np.ndarray
    n_max: int
    tail_estimate: float

    def truncated(self, n: int) -> "CouplingSet":
        """Restriction to the first n modes (amplitudes are per-mode independent)."""
        if not 1 <= n <= self.n_max:
            raise ValueError(f"truncation {n} outside [1, {self.n_max}]")
        return _make_coupling_set(self.modes[:n], self.W[:n].copy(), self.V[:n].copy())


def _tail_estimate(modes: tuple[Mode, ...], W: np.ndarray, V: np.ndarray) -> float:
    weights = (np.abs(W) ** 2 + np.abs(V) ** 2) * np.array([m.omega for m in modes])
    total = float(weights.sum())
    if total <= 0.0:
        return 0.0
    block = math.ceil(len(modes) / 5)
    return float(weights[-block:].sum()) / total


def _make_coupling_set(
    modes: tuple[Mode, ...], W: np.ndarray, V: np.ndarray
) -> CouplingSet:
    W.setflags(write=False)
    V.setflags(write=False)
    return CouplingSet(
        modes=modes, W=W, V=V, n_max=len(modes), tail_estimate=_tail_estimate(modes, W, V)
    )


def compute_coupling_set(
    cavity: CavityConfig,
    detector: DetectorConfig,
    n_max: int,
    switching: SwitchingProfile = SwitchingProfile.sharp(),
    *,
    backend: str | None = None,
) -> CouplingSet:
    """Solve modes 1..n_max and fill both amplitude families."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    modes = tuple(solve_modes(cavity, n_max))
    W = np.empty(n_max, dtype=np.complex128)
    V = np.empty(n_max, dtype=np.complex128)
    for i, mode in enumerate(modes):
        W[i] = compute_coupling(mode, detector, "W", switching, backend=backend)
        V[i] = compute_coupling(mode, detector, "V", switching, backend=backend)
    return _make_coupling_set(modes, W, V)
