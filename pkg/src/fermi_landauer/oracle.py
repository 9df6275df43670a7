"""Brute-force cross-check: exact evolution on a truncated Fock space.

The detector qubit is tensored with the first few cavity modes, each
contributing a particle slot and an antiparticle slot.  Ladder operators
are built with parity strings (each operator dressed with diagonal +-1
factors over the preceding slots) so every pair anticommutes exactly,
and the full interaction

    H(t) = lam chi(t) [ e^{i Omega t} sigma_+ (sum_n e^{+i w_n t} a*_n b_n^dag
                                              + e^{-i w_n t} c_n d_n) + h.c. ]

(a_n, c_n the spinor contractions of the coupling module, evaluated on
the worldline) is exponentiated step by step with the midpoint rule,
each step by Hermitian eigendecomposition.  Slot ordering is
(b_1, d_1, b_2, d_2, ...) with the detector factor first; any consistent
global ordering gives the same diagonal observables, which is all the
channel comparison consumes.

This module exists for correctness at tiny dimension (<= 3 modes, total
dimension <= 128), not for scale; the step loop is sequential and
LAPACK-bound, so it deliberately stays on plain numpy.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .coupling import DetectorConfig, SwitchingProfile, smear_amplitude
from .errors import NumericalFailureError
from .spectrum import CavityConfig, Mode, solve_modes

logger = logging.getLogger(__name__)

_DRIFT_RESTORE = 1e-12
_DRIFT_FATAL = 1e-8
MAX_MODES = 3


@dataclass(frozen=True)
class TruncatedSpace:
    """Detector x (first n_modes cavity modes), solved and frozen."""

    cavity: CavityConfig
    modes: tuple[Mode, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.modes) <= MAX_MODES:
            raise ValueError(
                f"truncated space supports 1..{MAX_MODES} modes, got {len(self.modes)}"
            )

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def n_slots(self) -> int:
        return 2 * self.n_modes

    @property
    def field_dim(self) -> int:
        return 1 << self.n_slots

    @property
    def dim(self) -> int:
        return 2 * self.field_dim


def build_space(cavity: CavityConfig, n_modes: int) -> TruncatedSpace:
    return TruncatedSpace(cavity=cavity, modes=tuple(solve_modes(cavity, n_modes)))


@dataclass(frozen=True)
class OperatorSet:
    """Dense matrix representations on the full detector x field space."""

    b: tuple[np.ndarray, ...]
    d: tuple[np.ndarray, ...]
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray
    sigma_z: np.ndarray
    field_energies: np.ndarray  # diagonal of H_f on the field factor


def _jw_chain(n_slots: int) -> list[np.ndarray]:
    """Annihilators for each slot with parity strings over preceding slots."""
    lower = np.array([[0.0, 1.0], [0.0, 0.0]])  # |occupied> -> |empty>
    parity = np.diag([1.0, -1.0])
    eye = np.eye(2)
    ops = []
    for s in range(n_slots):
        mat = np.array([[1.0]])
        for j in range(n_slots):
            if j < s:
                mat = np.kron(mat, parity)
            elif j == s:
                mat = np.kron(mat, lower)
            else:
                mat = np.kron(mat, eye)
        ops.append(mat)
    return ops


def build_operators(space: TruncatedSpace) -> OperatorSet:
    """Anticommuting ladder operators plus detector operators, all full-dim."""
    S = space.n_slots
    F = space.field_dim
    chain = _jw_chain(S)
    eye_f = np.eye(F)
    eye_d = np.eye(2)
    # Slot layout (b_1, d_1, b_2, d_2, ...); detector factor leads the kron.
    b = tuple(np.kron(eye_d, chain[2 * i]) for i in range(space.n_modes))
    d = tuple(np.kron(eye_d, chain[2 * i + 1]) for i in range(space.n_modes))

    idx = np.arange(F)
    energies = np.zeros(F)
    for s in range(S):
        occupied = (idx >> (S - 1 - s)) & 1
        energies += space.modes[s // 2].omega * occupied

    ground_to_excited = np.array([[0.0, 0.0], [1.0, 0.0]])  # basis (|->, |+>)
    return OperatorSet(
        b=b,
        d=d,
        sigma_plus=np.kron(ground_to_excited, eye_f),
        sigma_minus=np.kron(ground_to_excited.T, eye_f),
        sigma_z=np.kron(np.diag([-1.0, 1.0]), eye_f),
        field_energies=energies,
    )


def interaction_hamiltonian(
    space: TruncatedSpace,
    detector: DetectorConfig,
    t: float,
    switching: SwitchingProfile = SwitchingProfile.sharp(),
    ops: OperatorSet | None = None,
) -> np.ndarray:
    """H(t) on the full space; exactly zero outside the switching window."""
    if ops is None:
        ops = build_operators(space)
    chi = switching.value(t, detector.T)
    dim = space.dim
    if chi == 0.0 or detector.lam == 0.0:
        return np.zeros((dim, dim), dtype=np.complex128)
    x = detector.worldline.position(t)
    raising = np.zeros((dim, dim), dtype=np.complex128)
    for i, mode in enumerate(space.modes):
        amp_w = smear_amplitude(mode, "f", x, detector.eta)  # etabar.f_n
        amp_v = smear_amplitude(mode, "h", x, detector.eta)  # hbar_n.eta
        ph_b = np.exp(1j * (detector.omega + mode.omega) * t)
        ph_d = np.exp(1j * (detector.omega - mode.omega) * t)
        raising = raising + ph_b * np.conj(amp_w) * (ops.b[i].conj().T) + ph_d * amp_v * ops.d[i]
    half = detector.lam * chi * (ops.sigma_plus @ raising)
    return half + half.conj().T


@dataclass
class OracleState:
    """Density matrix with evolution bookkeeping."""

    rho: np.ndarray
    time: float
    steps: int
    trace_drift: float = 0.0
    herm_drift: float = 0.0
    restore_count: int = 0

    def purity(self) -> float:
        return float(np.real(np.trace(self.rho @ self.rho)))


def detector_diagonal(p: float) -> np.ndarray:
    return np.diag([1.0 - p, p]).astype(np.complex128)


def vacuum_field_diagonal(space: TruncatedSpace) -> np.ndarray:
    diag = np.zeros(space.field_dim)
    diag[0] = 1.0
    return diag


def thermal_field_diagonal(space: TruncatedSpace, T_R: float) -> np.ndarray:
    """Gibbs weights over the truncated occupation basis."""
    if T_R < 0.0:
        raise ValueError(f"field temperature must be >= 0, got {T_R}")
    ops = build_operators(space)
    if T_R == 0.0:
        return vacuum_field_diagonal(space)
    w = np.exp(-ops.field_energies / T_R)
    return w / w.sum()


def product_state(detector_p: float, field_diag: np.ndarray) -> OracleState:
    rho = np.kron(detector_diagonal(detector_p), np.diag(field_diag)).astype(
        np.complex128
    )
    return OracleState(rho=rho, time=0.0, steps=0)


def evolve_exact(
    space: TruncatedSpace,
    detector: DetectorConfig,
    initial: OracleState,
    dt: float,
    switching: SwitchingProfile = SwitchingProfile.sharp(),
) -> OracleState:
    """Evolve to t = T with midpoint-rule exponential steps.

    Each step applies exp(-i H(t_k + dt/2) dt) built from a Hermitian
    eigendecomposition, so every step is unitary to rounding; trace and
    Hermiticity are restored (and logged) if they drift past 1e-12.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if detector.T / dt > 1e7:
        raise ValueError(f"T/dt = {detector.T / dt:g} exceeds the 1e7 step cap")
    n_steps = max(1, round(detector.T / dt))
    h = detector.T / n_steps
    ops = build_operators(space)
    rho = initial.rho.copy()
    trace_drift = initial.trace_drift
    herm_drift = initial.herm_drift
    restores = initial.restore_count
    for k in range(n_steps):
        t_mid = (k + 0.5) * h
        ham = interaction_hamiltonian(space, detector, t_mid, switching, ops)
        evals, evecs = np.linalg.eigh(ham)
        u = (evecs * np.exp(-1j * evals * h)) @ evecs.conj().T
        rho = u @ rho @ u.conj().T

        tr = float(np.real(np.trace(rho)))
        td = abs(tr - 1.0)
        hd = float(np.max(np.abs(rho - rho.conj().T)))
        trace_drift = max(trace_drift, td)
        herm_drift = max(herm_drift, hd)
        if td > _DRIFT_FATAL or hd > _DRIFT_FATAL:
            raise NumericalFailureError(
                f"density-matrix drift exceeded {_DRIFT_FATAL:g} at step {k}: "
                f"trace {td:g}, hermiticity {hd:g}"
            )
        if td > _DRIFT_RESTORE or hd > _DRIFT_RESTORE:
            rho = 0.5 * (rho + rho.conj().T)
            rho = rho / np.real(np.trace(rho))
            restores += 1
            logger.debug(
                "restored invariants at step %d (trace drift %.3e, herm drift %.3e)",
                k,
                td,
                hd,
            )

    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if min_eig < -_DRIFT_FATAL:
        raise NumericalFailureError(f"final state lost positivity: min eig {min_eig:g}")
    return OracleState(
        rho=rho,
        time=initial.time + detector.T,
        steps=initial.steps + n_steps,
        trace_drift=trace_drift,
        herm_drift=herm_drift,
        restore_count=restores,
    )


def detector_reduced(state: OracleState, space: TruncatedSpace) -> np.ndarray:
    rho4 = state.rho.reshape(2, space.field_dim, 2, space.field_dim)
    return np.einsum("afbf->ab", rho4)


def field_reduced(state: OracleState, space: TruncatedSpace) -> np.ndarray:
    rho4 = state.rho.reshape(2, space.field_dim, 2, space.field_dim)
    return np.einsum("afag->fg", rho4)


def _qubit_entropy(rho2: np.ndarray) -> float:
    evals = np.linalg.eigvalsh(rho2)
    s = 0.0
    for lam in evals:
        if lam > 1e-300:
            s -= float(lam) * math.log(float(lam))
    return s


def measure_channel(
    initial: OracleState, final: OracleState, space: TruncatedSpace
) -> tuple[float, float, float]:
    """(delta_p, dQ, dS) between two states on the same space.

    dQ is the field-energy gain, dS = S(detector before) - S(detector
    after), matching the sign convention of the perturbative channels.
    """
    ops = build_operators(space)
    d0 = detector_reduced(initial, space)
    d1 = detector_reduced(final, space)
    f0 = np.real(np.diag(field_reduced(initial, space)))
    f1 = np.real(np.diag(field_reduced(final, space)))
    delta_p = float(np.real(d1[1, 1] - d0[1, 1]))
    dQ = float(np.dot(ops.field_energies, f1 - f0))
    dS = _qubit_entropy(d0) - _qubit_entropy(d1)
    return delta_p, dQ, dS


def total_energy(state: OracleState, space: TruncatedSpace, omega: float) -> float:
    """<H_f + H_D> with the detector gap spread as +-omega/2 levels."""
    ops = build_operators(space)
    field_part = float(
        np.dot(ops.field_energies, np.real(np.diag(field_reduced(state, space))))
    )
    det_part = 0.5 * omega * float(np.real(np.trace(ops.sigma_z @ state.rho)))
    return field_part + det_part
