"""Resonant thermal channel: heat and entropy against a warm field.

Each cavity mode holds at most one particle and one antiparticle, so a
mode in thermal equilibrium at inverse temperature beta has partition
factor Z = (1 + e^{-beta w})^2 and occupation marginals

    P0 = 1/Z        (empty)
    P1 = e^{-beta w}/Z   (exactly one of the two slots; either slot)
    P2 = e^{-2 beta w}/Z (both slots filled)

normalized as P0 + 2 P1 + P2 = 1.  When one mode B sits on the detector
gap, its co-rotating amplitude V_B grows linearly in the window T and
dominates every bounded off-resonant term, leaving the closed channel

    X   = p P0 + (2p - 1) P1 - (1 - p) P2
    delta_p = -lam^2 |V_B|^2 X
    dQ  = lam^2 w_B |V_B|^2 X
    dS  = lam^2 ln((1-p)/p) |V_B|^2 X.

In the Gibbs detector convention, X = (r - q)/((1+r)(1+q)) with
r = e^{-w_B/T_D}, q = e^{-w_B/T_R}: heat flows from the hotter side to
the colder one and the Landauer margin dQ - T_R dS is nonnegative with
equality exactly at T_D = T_R.  The temperature-to-population formula is
also provided in the inverted "paper" convention (p >= 1/2), selectable
by flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coupling import DetectorConfig
from .spectrum import Mode
from .vacuum_channel import ChannelResult, _check_perturbation, binary_entropy

# |Omega - w_B| * T must stay below this for the single-mode reduction.
DETUNING_GATE = 1e-6


@dataclass(frozen=True)
class ThermalOccupancy:
    """Occupation marginals of one mode in a thermal field state."""

    beta: float
    omega_B: float
    Z_B: float
    P0: float
    P1: float
    P2: float

    @property
    def T_R(self) -> float:
        if self.beta == 0.0:
            return math.inf
        if math.isinf(self.beta):
            return 0.0
        return 1.0 / self.beta


@dataclass(frozen=True)
class ResonanceSpec:
    """Which mode carries the resonance and how detuned it is."""

    B: int
    omega_B: float
    detuning_check: float

    @classmethod
    def pick(cls, modes: tuple[Mode, ...], detector: DetectorConfig) -> "ResonanceSpec":
        gaps = [abs(m.omega - detector.omega) for m in modes]
        i = int(np.argmin(gaps))
        return cls(
            B=modes[i].n,
            omega_B=modes[i].omega,
            detuning_check=gaps[i] * detector.T,
        )

    @property
    def resonant(self) -> bool:
        return self.detuning_check < DETUNING_GATE


def occupation_marginals(T_R: float, omega_B: float) -> ThermalOccupancy:
    """Marginals of the resonant mode; the other modes trace out exactly."""
    if not omega_B > 0.0:
        raise ValueError(f"mode frequency must be positive, got {omega_B}")
    if T_R < 0.0 or math.isnan(T_R):
        raise ValueError(f"field temperature must be >= 0, got {T_R}")
    if T_R == 0.0:
        beta = math.inf
        q = 0.0
    else:
        beta = 1.0 / T_R  # T_R = inf gives beta = 0, the equipartition limit
        q = math.exp(-beta * omega_B)
    Z = (1.0 + q) ** 2
    return ThermalOccupancy(
        beta=beta, omega_B=omega_B, Z_B=Z, P0=1.0 / Z, P1=q / Z, P2=q * q / Z
    )


def p_from_temperature(T_D: float, omega: float, convention: str = "gibbs") -> float:
    """Excited-state population of a detector prepared at temperature T_D.

    "gibbs" weights the excited state by e^{-omega/T_D} (p <= 1/2);
    "paper" is the inverted form e^{+omega/T_D}/(e^{+omega/T_D} + 1)
    (p >= 1/2, population inversion as T_D -> 0).
    """
    if not T_D > 0.0:
        raise ValueError(f"detector temperature must be positive, got {T_D}")
    x = omega / T_D
    if convention == "gibbs":
        return 1.0 / (1.0 + math.exp(x)) if x < 700.0 else 0.0
    if convention == "paper":
        return 1.0 / (1.0 + math.exp(-x)) if x > -700.0 else 0.0
    raise ValueError(f"convention must be 'gibbs' or 'paper', got {convention!r}")


def log_population_ratio(p: float) -> float:
    """ln((1-p)/p) for 0 < p < 1, nan on the boundary."""
    if 0.0 < p < 1.0:
        return math.log((1.0 - p) / p)
    return math.nan


def landauer_margin(dQ: float, dS: float, T_R: float) -> float:
    """dQ - T_R dS; nonnegative when the erasure bound holds."""
    if T_R < 0.0:
        raise ValueError(f"reservoir temperature must be >= 0, got {T_R}")
    return dQ - T_R * dS


def thermal_weight(occ: ThermalOccupancy, p: float) -> float:
    """Channel weight X = p P0 + (2p-1) P1 - (1-p) P2."""
    return p * occ.P0 + (2.0 * p - 1.0) * occ.P1 - (1.0 - p) * occ.P2


def apply_thermal_channel(
    occ: ThermalOccupancy,
    V_B: complex,
    detector: DetectorConfig,
    *,
    B: int = 0,
    allow_detuned: bool = False,
    log_ratio: float | None = None,
) -> ChannelResult:
    """Single-resonant-mode channel against a thermal field.

    `log_ratio` optionally supplies ln((1-p)/p) analytically (omega_B/T_D
    in the Gibbs convention); near the T_D = T_R diagonal that removes the
    rounding wobble of recovering it from p and keeps the margin's sign
    exact.  Refuses detuned configurations unless `allow_detuned`.
    """
    detuning = abs(detector.omega - occ.omega_B) * detector.T
    if detuning >= DETUNING_GATE and not allow_detuned:
        raise ValueError(
            f"detuning |Omega - w_B| * T = {detuning:g} >= {DETUNING_GATE:g}: "
            "the single-mode channel only holds on resonance "
            "(pass allow_detuned=True to override)"
        )
    p = detector.p
    lam2 = detector.lam**2
    v2 = abs(V_B) ** 2
    X = thermal_weight(occ, p)

    delta_p = -lam2 * v2 * X
    _check_perturbation(p, delta_p)
    dQ = lam2 * occ.omega_B * v2 * X
    if log_ratio is None:
        log_ratio = log_population_ratio(p)
    dS_linear = lam2 * log_ratio * v2 * X
    dS_exact = binary_entropy(p) - binary_entropy(p + delta_p)
    margin = landauer_margin(dQ, dS_linear, occ.T_R)

    flow = lam2 * v2
    field_diag = np.array(
        [
            occ.P0 + flow * ((1.0 - p) * occ.P1 - p * occ.P0),
            occ.P1 + flow * ((1.0 - p) * occ.P2 - p * occ.P1),
            occ.P1 + flow * (p * occ.P0 - (1.0 - p) * occ.P1),
            occ.P2 + flow * (p * occ.P1 - (1.0 - p) * occ.P2),
        ]
    )
    return ChannelResult(
        delta_p=delta_p,
        dQ=dQ,
        dS_linear=dS_linear,
        dS_exact=dS_exact,
        landauer_margin=margin,
        per_mode=((B, dQ, dS_linear),),
        field_diag=field_diag,
        field_diag_labels=("00", "10", "01", "11"),
    )
