"""Centered finite-difference Wirtinger derivatives.

``d/dz = (d/dx - i d/dy) / 2`` and ``d/dzbar = (d/dx + i d/dy) / 2``. All
stencils are second order, so halving ``h`` should shrink the truncation
error by a factor close to 4 until rounding takes over.
"""
from __future__ import annotations

from collections.abc import Callable

import numpy as np

Field = Callable[[complex], complex]


def default_step(z: complex) -> float:
    return 1e-5 * max(1.0, abs(z))


def partials(f: Field, z: complex, h: float) -> tuple[complex, complex]:
    """Centered differences ``(df/dx, df/dy)`` at ``z``."""
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return fx, fy


def d_dzbar(f: Field, z: complex, h: float | None = None) -> complex:
    h = default_step(z) if h is None else h
    fx, fy = partials(f, z, h)
    return (fx + 1j * fy) / 2


def d_dz(f: Field, z: complex, h: float | None = None) -> complex:
    h = default_step(z) if h is None else h
    fx, fy = partials(f, z, h)
    return (fx - 1j * fy) / 2


def convergence_ratio(residual: Callable[[float], float], h: float) -> float:
    """``residual(h) / residual(h/2)``; about 4 for a second-order stencil."""
    coarse = residual(h)
    fine = residual(h / 2)
    if fine == 0:
        return np.inf if coarse else np.nan
    return coarse / fine
