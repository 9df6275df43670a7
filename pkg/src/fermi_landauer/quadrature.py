"""Quadrature drivers.

Two regimes live here:

* `adaptive_simpson` — recursive interval-bisecting Simpson for smooth
  spatial integrands (mode-function products).  The initial grid is
  seeded fine enough to resolve the fastest trigonometric factor, since
  a symmetric oscillation can otherwise fool the error estimate into
  accepting a cancelled panel.

* `oscillatory_segment` — globally refined composite Simpson for the
  rotating-phase time integrals.  The starting panel width is capped at
  an eighth of the shortest oscillation period, then the panel count is
  doubled until two refinements agree; the accepted value carries the
  standard 1/15 extrapolation correction.  The integrands are uniformly
  oscillatory (no localized features on a linear worldline), so global
  refinement matches per-interval bisection while vectorizing cleanly.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import NumericalFailureError

_MAX_DOUBLINGS = 22
_MAX_SUBINTERVALS = 1 << 24


def _initial_subintervals(a: float, b: float, freq: float) -> int:
    # Simpson panel spans 2 subintervals; keep panels <= period/8.
    span = b - a
    n = 8
    if freq > 0.0 and span > 0.0:
        n = max(n, int(math.ceil(16.0 * span * freq / (2.0 * math.pi))))
    return n + (n % 2)


def oscillatory_segment(
    kernel: Callable[..., complex],
    a: float,
    b: float,
    freq: float,
    tol: float,
    args: tuple,
) -> complex:
    """Integrate one smooth segment to absolute tolerance `tol`.

    `kernel(a, b, nsub, *args)` must return the composite-Simpson value
    with `nsub` subintervals; `freq` is the largest angular frequency
    present in the integrand (phase plus spatial drift plus ramp).
    """
    if b <= a:
        return 0.0 + 0.0j
    nsub = _initial_subintervals(a, b, freq)
    prev = kernel(a, b, nsub, *args)
    for _ in range(_MAX_DOUBLINGS):
        nsub *= 2
        if nsub > _MAX_SUBINTERVALS:
            break
        cur = kernel(a, b, nsub, *args)
        if abs(cur - prev) <= 15.0 * tol:
            return cur + (cur - prev) / 15.0
        prev = cur
    raise NumericalFailureError(
        f"oscillatory quadrature on [{a}, {b}] did not reach tol={tol:g} "
        f"within {nsub} subintervals"
    )


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    min_panels: int = 8,
    max_depth: int = 40,
) -> float:
    """Adaptive Simpson integral of a smooth real function on [a, b]."""
    if b <= a:
        return 0.0
    n = max(2, min_panels)
    h = (b - a) / n
    edges = [a + i * h for i in range(n + 1)]
    total = 0.0
    for i in range(n):
        lo, hi = edges[i], edges[i + 1]
        fl, fh = f(lo), f(hi)
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        s = (hi - lo) / 6.0 * (fl + 4.0 * fm + fh)
        total += _simpson_recurse(f, lo, hi, fl, fm, fh, s, tol / n, max_depth)
    return total


def _simpson_recurse(f, lo, hi, fl, fm, fh, whole, tol, depth) -> float:
    mid = 0.5 * (lo + hi)
    lmid = 0.5 * (lo + mid)
    rmid = 0.5 * (mid + hi)
    flm = f(lmid)
    frm = f(rmid)
    left = (mid - lo) / 6.0 * (fl + 4.0 * flm + fm)
    right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fh)
    err = left + right - whole
    if abs(err) <= 15.0 * tol or depth == 0:
        if depth == 0 and abs(err) > 15.0 * tol:
            raise NumericalFailureError(
                f"adaptive Simpson exhausted depth on [{lo}, {hi}]"
            )
        return left + right + err / 15.0
    return _simpson_recurse(
        f, lo, mid, fl, flm, fm, left, tol / 2.0, depth - 1
    ) + _simpson_recurse(f, mid, hi, fm, frm, fh, right, tol / 2.0, depth - 1)
