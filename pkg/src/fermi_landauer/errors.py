"""Exception types shared across the package."""


class NumericalFailureError(RuntimeError):
    """A numerical routine failed to converge or produced an invalid state.

    Raised by the root finder (no bracketed sign change, iteration cap),
    by quadrature drivers that exhaust refinement, and by the exact
    evolution when density-matrix invariants drift beyond repair.
    Mapped to exit code 2 by the CLI.
    """


class PerturbationBreakdownError(NumericalFailureError):
    """Second-order channel output left its validity region.

    The perturbative channels are trustworthy only while the population
    shift stays small against the distance to the probability boundary;
    past that the truncated expansion is meaningless.
    """
