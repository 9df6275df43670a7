"""Numeric backend selection.

The oscillatory time integrals are the hot loop of the package: a single
channel evaluation integrates hundreds of rapidly rotating phases over
thousands of quadrature panels.  Those kernels exist twice, once as a
numba @njit scalar loop and once as vectorized numpy, and the active
implementation is picked through the FERMI_LANDAUER_BACKEND environment
variable ("numba" or "numpy").  Unset, numba is used when it imports and
numpy otherwise, so the package stays usable on hosts without a working
LLVM toolchain.
"""

from __future__ import annotations

import os

BACKEND_ENV = "FERMI_LANDAUER_BACKEND"
THREADS_ENV = "FERMI_LANDAUER_THREADS"

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except Exception:  # pragma: no cover - depends on host toolchain
    HAS_NUMBA = False


def resolve_backend(name: str | None = None) -> str:
    """Return the backend name to use: "numba" or "numpy".

    `name` overrides the environment; invalid names raise ValueError so a
    typo in the env var fails loudly instead of silently changing paths.
    """
    choice = (name or os.environ.get(BACKEND_ENV, "auto")).strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise ValueError(
                f"{BACKEND_ENV}=numba requested but numba is not importable"
            )
        return "numba"
    raise ValueError(f"unknown backend {choice!r}; expected 'numba' or 'numpy'")


def max_workers(flag_value: int | None = None) -> int:
    """Parallelism degree for sweeps: flag value capped by FERMI_LANDAUER_THREADS."""
    avail = os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap is not None:
        try:
            avail = min(avail, max(1, int(cap)))
        except ValueError as exc:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from exc
    if flag_value is not None:
        avail = min(avail, max(1, flag_value))
    return avail
