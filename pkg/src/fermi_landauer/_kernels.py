"""Composite-Simpson kernels for the oscillatory coupling integrals.

Each kernel evaluates one smooth switching segment of

    integral_a^b  chi(t) * amp(x0 + v t) * exp(i phi t)  dt

with `nsub` Simpson subintervals, where the spatial weight is

    amp(x) = A * (cos(k x) + mok * sin(k x)) + B * wok * sin(k x)

(mok = m/k, wok = omega/k; A and B fold the reference spinor and the
mode normalization, so one formula serves both coupling kinds).  The
switching factor is either 1 (chi_flag=0) or the half-cosine ramp
0.5*(1 - cos(c0 t + c1)) (chi_flag=1).

Two implementations with identical semantics: a numba @njit scalar loop
and a vectorized numpy path.  fastmath stays off so both backends agree
to rounding order.
"""

from __future__ import annotations

import math

import numpy as np

from .backend import HAS_NUMBA, resolve_backend


def _segment_simpson_loop(
    a: float,
    b: float,
    nsub: int,
    phi: float,
    k: float,
    mok: float,
    wok: float,
    A: complex,
    B: complex,
    x0: float,
    v: float,
    chi_flag: int,
    c0: float,
    c1: float,
) -> complex:
    h = (b - a) / nsub
    acc = 0.0 + 0.0j
    for i in range(nsub + 1):
        t = a + h * i
        x = x0 + v * t
        s = math.sin(k * x)
        amp = A * (math.cos(k * x) + mok * s) + B * (wok * s)
        if chi_flag == 1:
            amp = amp * (0.5 * (1.0 - math.cos(c0 * t + c1)))
        val = amp * complex(math.cos(phi * t), math.sin(phi * t))
        if i == 0 or i == nsub:
            acc += val
        elif i % 2 == 1:
            acc += 4.0 * val
        else:
            acc += 2.0 * val
    return acc * (h / 3.0)


def _segment_simpson_numpy(
    a: float,
    b: float,
    nsub: int,
    phi: float,
    k: float,
    mok: float,
    wok: float,
    A: complex,
    B: complex,
    x0: float,
    v: float,
    chi_flag: int,
    c0: float,
    c1: float,
) -> complex:
    t = np.linspace(a, b, nsub + 1)
    x = x0 + v * t
    s = np.sin(k * x)
    amp = A * (np.cos(k * x) + mok * s) + B * (wok * s)
    if chi_flag == 1:
        amp = amp * (0.5 * (1.0 - np.cos(c0 * t + c1)))
    vals = amp * np.exp(1j * phi * t)
    w = np.full(nsub + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return complex(np.dot(w, vals) * ((b - a) / (3.0 * nsub)))


_NUMBA_KERNEL = None
if HAS_NUMBA:
    from numba import njit

    _NUMBA_KERNEL = njit(cache=True, nogil=True)(_segment_simpson_loop)


def get_segment_kernel(backend: str | None = None):
    """Return the segment-Simpson callable for the chosen backend."""
    name = resolve_backend(backend)
    if name == "numba":
        return _NUMBA_KERNEL
    return _segment_simpson_numpy
