"""Cavity mode spectrum of a massive Dirac field confined on [0, L].

Conventions (metric diag(1,-1), gamma0 = sigma_x, gamma1 = sigma_z,
gamma5 = sigma_y): the confining walls force the wavenumbers k_n to
solve

    (m/k) sin(kL) + cos(kL) = 0,

one root per interval ((n-1/2) pi/L, n pi/L).  The particle / antiparticle
spatial spinors are

    f_n(x) = N_n ( (w/k) sin(kx),  cos(kx) + (m/k) sin(kx) )
    h_n(x) = N_n (-(w/k) sin(kx),  cos(kx) + (m/k) sin(kx) )

with w = sqrt(k^2 + m^2) and

    N_n = sqrt(2) k^2 [k^2 (m + 2 L w^2) + m w^2 sin^2(kL)]^(-1/2).

At the solved roots w^2 sin^2(kL) = k^2, which is what makes N_n a unit
normalization; the massless case collapses to k_n = (n-1/2) pi/L and
N_n = 1/sqrt(L).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import NumericalFailureError
from .quadrature import adaptive_simpson

_MAX_BISECT = 200


@dataclass(frozen=True)
class CavityConfig:
    """Cavity geometry and numerical tolerances."""

    L: float
    m: float
    root_tol: float = 1e-12
    quad_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not (self.L > 0.0 and math.isfinite(self.L)):
            raise ValueError(f"cavity length must be positive, got {self.L}")
        if not (self.m >= 0.0 and math.isfinite(self.m)):
            raise ValueError(f"mass must be >= 0, got {self.m}")
        if not (self.root_tol > 0.0 and self.quad_tol > 0.0):
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class Mode:
    """One solved cavity mode; carries its cavity so it is self-contained."""

    n: int
    k: float
    omega: float
    norm: float
    cavity: CavityConfig


class SpinorValue(NamedTuple):
    upper: float
    lower: float


def boundary_residual(k: float, cavity: CavityConfig) -> float:
    """Wall-condition residual (m/k) sin(kL) + cos(kL); zero at a mode."""
    if k <= 0.0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    kL = k * cavity.L
    return (cavity.m / k) * math.sin(kL) + math.cos(kL)


def _normalization(k: float, m: float, L: float) -> float:
    w2 = k * k + m * m
    denom = k * k * (m + 2.0 * L * w2) + m * w2 * math.sin(k * L) ** 2
    return math.sqrt(2.0) * k * k / math.sqrt(denom)


def _bisect_mode(cavity: CavityConfig, n: int) -> float:
    L, m = cavity.L, cavity.m
    lo = (n - 0.5) * math.pi / L
    hi = n * math.pi / L
    flo = boundary_residual(lo, cavity)
    fhi = boundary_residual(hi, cavity)
    if flo * fhi >= 0.0:
        # Residual is +-m/k at the left edge and -+1 at the right edge;
        # equal signs mean the inputs are corrupt, not that the root moved.
        raise NumericalFailureError(
            f"no sign change in mode bracket n={n}: r({lo:g})={flo:g}, "
            f"r({hi:g})={fhi:g}"
        )
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        fmid = boundary_residual(mid, cavity)
        if abs(fmid) <= cavity.root_tol:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    raise NumericalFailureError(
        f"mode bisection for n={n} did not reach |residual| <= "
        f"{cavity.root_tol:g} in {_MAX_BISECT} iterations"
    )


def solve_modes(cavity: CavityConfig, count: int) -> list[Mode]:
    """Solve the first `count` cavity modes in increasing wavenumber order.

    The massless spectrum is analytic (k_n = (n-1/2) pi/L); for m > 0 each
    root is bisected inside its guaranteed bracket.
    """
    if count < 1:
        raise ValueError(f"mode count must be >= 1, got {count}")
    modes = []
    for n in range(1, count + 1):
        if cavity.m == 0.0:
            k = (n - 0.5) * math.pi / cavity.L
        else:
            k = _bisect_mode(cavity, n)
        omega = math.sqrt(k * k + cavity.m * cavity.m)
        modes.append(Mode(n=n, k=k, omega=omega, norm=_normalization(k, cavity.m, cavity.L), cavity=cavity))
    return modes


def eval_mode_spinor(mode: Mode, kind: str, x: float) -> SpinorValue:
    """Evaluate f_n (kind "f") or h_n (kind "h") at position x in [0, L]."""
    cav = mode.cavity
    if not 0.0 <= x <= cav.L:
        raise ValueError(f"position {x} outside cavity [0, {cav.L}]")
    if kind not in ("f", "h"):
        raise ValueError(f"spinor kind must be 'f' or 'h', got {kind!r}")
    s = math.sin(mode.k * x)
    upper = mode.norm * (mode.omega / mode.k) * s
    lower = mode.norm * (math.cos(mode.k * x) + (cav.m / mode.k) * s)
    if kind == "h":
        upper = -upper
    return SpinorValue(upper=upper, lower=lower)


def gram_matrix(modes: Iterable[Mode], cavity: CavityConfig) -> np.ndarray:
    """Overlap matrix of the combined basis {f_1..f_N, h_1..h_N}.

    Entries are spatial integrals of spinor dot products; the basis is
    orthonormal, so the result should be the identity up to quad_tol.
    """
    modes = list(modes)
    nb = len(modes)
    kinds = [("f", m) for m in modes] + [("h", m) for m in modes]
    gram = np.empty((2 * nb, 2 * nb))
    kmax = max(m.k for m in modes)
    # Seed enough panels to resolve the fastest product frequency (2*kmax).
    panels = max(8, 4 * int(math.ceil(kmax * cavity.L / math.pi)))
    for a, (ka, ma) in enumerate(kinds):
        for b in range(a, 2 * nb):
            kb, mb = kinds[b]

            def integrand(x: float) -> float:
                va = eval_mode_spinor(ma, ka, x)
                vb = eval_mode_spinor(mb, kb, x)
                return va.upper * vb.upper + va.lower * vb.lower

            val = adaptive_simpson(
                integrand, 0.0, cavity.L, cavity.quad_tol, min_panels=panels
            )
            gram[a, b] = gram[b, a] = val
    return gram
