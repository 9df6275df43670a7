"""Cavity Dirac-field detector thermodynamics at desk scale.

Mode spectrum of a bag-confined 1+1D Dirac field, second-order detector
channels for vacuum and thermal field states (heat, entropy, Landauer
margin), and an exact truncated-Fock-space evolution as cross-check.
"""

from .coupling import (
    CouplingSet,
    DetectorConfig,
    SwitchingProfile,
    Worldline,
    closed_form_static,
    compute_coupling,
    compute_coupling_set,
    smear_amplitude,
)
from .errors import NumericalFailureError, PerturbationBreakdownError
from .spectrum import (
    CavityConfig,
    Mode,
    SpinorValue,
    boundary_residual,
    eval_mode_spinor,
    gram_matrix,
    solve_modes,
)
from .thermal_channel import (
    ResonanceSpec,
    ThermalOccupancy,
    apply_thermal_channel,
    landauer_margin,
    occupation_marginals,
    p_from_temperature,
)
from .vacuum_channel import (
    ChannelResult,
    ConvergenceRow,
    apply_vacuum_channel,
    binary_entropy,
    convergence_report,
)

__version__ = "0.1.0"

__all__ = [
    "CavityConfig",
    "ChannelResult",
    "ConvergenceRow",
    "CouplingSet",
    "DetectorConfig",
    "Mode",
    "NumericalFailureError",
    "PerturbationBreakdownError",
    "ResonanceSpec",
    "SpinorValue",
    "SwitchingProfile",
    "ThermalOccupancy",
    "Worldline",
    "apply_thermal_channel",
    "apply_vacuum_channel",
    "binary_entropy",
    "boundary_residual",
    "closed_form_static",
    "compute_coupling",
    "compute_coupling_set",
    "convergence_report",
    "eval_mode_spinor",
    "gram_matrix",
    "landauer_margin",
    "occupation_marginals",
    "p_from_temperature",
    "smear_amplitude",
    "solve_modes",
    "__version__",
]
