"""Second-order detector channel for a vacuum-state field.

With the field starting in its vacuum, the order-lambda^2 evolution
moves detector population by

    delta_p = lam^2 sum_n [(1-p)|W_n|^2 - p|V_n|^2]

while the field picks up one particle (weight |W_n|^2) or one
antiparticle (weight |V_n|^2) per mode.  Heat flows into the field as

    dQ = lam^2 sum_n [(1-p)|W_n|^2 + p|V_n|^2] w_n >= 0,

a sum of nonnegative terms: the vacuum can only absorb energy.  The
entropy change of the detector is reported twice: the leading-order
closed form

    dS_linear = lam^2 ln((1-p)/p) sum_n [p|V_n|^2 - (1-p)|W_n|^2]

(undefined at p in {0, 1}, where its prefactor diverges) and the exact
binary-entropy difference dS_exact = S2(p) - S2(p + delta_p), which is
finite everywhere.  Both use the convention dS = S(initial) - S(final).

Under sharp switching the dQ mode sum decays only like 1/w_n, so the
truncation diagnostic is part of the result rather than a convergence
claim; cosine-ramp switching restores fast decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coupling import CouplingSet, DetectorConfig, SwitchingProfile, compute_coupling_set
from .errors import PerturbationBreakdownError
from .spectrum import CavityConfig


def binary_entropy(q: float) -> float:
    """S2(q) = -q ln q - (1-q) ln(1-q), with 0 ln 0 = 0."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"probability outside [0, 1]: {q}")
    s = 0.0
    if q > 0.0:
        s -= q * math.log(q)
    if q < 1.0:
        s -= (1.0 - q) * math.log(1.0 - q)
    return s


@dataclass(frozen=True)
class ChannelResult:
    """Channel output: population shift, heat, entropy, Landauer margin.

    field_diag holds the diagonal of the final field state in the basis
    named by field_diag_labels; per_mode lists (n, dQ_n, dS_n) with dS_n
    the linearized per-mode entropy contribution (nan at p in {0, 1}).
    """

    delta_p: float
    dQ: float
    dS_linear: float
    dS_exact: float
    landauer_margin: float
    per_mode: tuple[tuple[int, float, float], ...]
    field_diag: np.ndarray
    field_diag_labels: tuple[str, ...]


def _check_perturbation(p: float, delta_p: float) -> None:
    if not 0.0 <= p + delta_p <= 1.0:
        raise PerturbationBreakdownError(
            f"population p + delta_p = {p + delta_p:g} left [0, 1]; "
            "coupling too strong for the second-order channel"
        )
    if delta_p == 0.0:
        return
    # Trust region of the truncation: the shift must stay small against
    # the distance to the boundary it moves toward (a state hugging one
    # boundary may still be pushed inward by a large-relative amount).
    headroom = (1.0 - p) if delta_p > 0.0 else p
    scale = min(1.0, headroom) if headroom > 0.0 else 1.0
    if abs(delta_p) > 0.1 * scale:
        raise PerturbationBreakdownError(
            f"|delta_p| = {abs(delta_p):g} exceeds 0.1 * {scale:g}; "
            "second-order truncation is not trustworthy here"
        )


def apply_vacuum_channel(
    couplings: CouplingSet, detector: DetectorConfig
) -> ChannelResult:
    """Evaluate the vacuum channel for the given coupling amplitudes."""
    p = detector.p
    lam2 = detector.lam**2
    absW2 = np.abs(couplings.W) ** 2
    absV2 = np.abs(couplings.V) ** 2
    omegas = np.array([m.omega for m in couplings.modes])

    delta_p = lam2 * float(((1.0 - p) * absW2 - p * absV2).sum())
    _check_perturbation(p, delta_p)

    dq_terms = lam2 * ((1.0 - p) * absW2 + p * absV2) * omegas
    dQ = float(dq_terms.sum())
    if 0.0 < p < 1.0:
        log_ratio = math.log((1.0 - p) / p)
        ds_terms = lam2 * log_ratio * (p * absV2 - (1.0 - p) * absW2)
        dS_linear = float(ds_terms.sum())
    else:
        ds_terms = np.full_like(dq_terms, math.nan)
        dS_linear = math.nan
    dS_exact = binary_entropy(p) - binary_entropy(p + delta_p)

    fermion = lam2 * (1.0 - p) * absW2
    antifermion = lam2 * p * absV2
    vacuum_weight = 1.0 - float(fermion.sum() + antifermion.sum())
    field_diag = np.concatenate(([vacuum_weight], fermion, antifermion))
    labels = (
        ("vac",)
        + tuple(f"f{m.n}" for m in couplings.modes)
        + tuple(f"af{m.n}" for m in couplings.modes)
    )

    per_mode = tuple(
        (m.n, float(dq_terms[i]), float(ds_terms[i]))
        for i, m in enumerate(couplings.modes)
    )
    return ChannelResult(
        delta_p=delta_p,
        dQ=dQ,
        dS_linear=dS_linear,
        dS_exact=dS_exact,
        landauer_margin=dQ,  # reservoir at T_R = 0
        per_mode=per_mode,
        field_diag=field_diag,
        field_diag_labels=labels,
    )


@dataclass(frozen=True)
class ConvergenceRow:
    n_max: int
    dQ: float
    delta_p: float
    tail_estimate: float


def convergence_report(
    cavity: CavityConfig,
    detector: DetectorConfig,
    n_max_list: list[int],
    switching: SwitchingProfile = SwitchingProfile.sharp(),
    *,
    backend: str | None = None,
) -> list[ConvergenceRow]:
    """Channel output vs truncation order, one row per requested n_max.

    Amplitudes are per-mode independent, so the largest set is computed
    once and the smaller truncations are prefixes of it.
    """
    if not n_max_list:
        raise ValueError("n_max_list must be nonempty")
    if any(b <= a for a, b in zip(n_max_list, n_max_list[1:])):
        raise ValueError(f"n_max_list must be strictly increasing, got {n_max_list}")
    full = compute_coupling_set(
        cavity, detector, n_max_list[-1], switching, backend=backend
    )
    rows = []
    for n in n_max_list:
        sub = full.truncated(n)
        res = apply_vacuum_channel(sub, detector)
        rows.append(
            ConvergenceRow(
                n_max=n, dQ=res.dQ, delta_p=res.delta_p, tail_estimate=sub.tail_estimate
            )
        )
    return rows
