"""Stereographic projection between the unit sphere and the extended plane.

The projection is from the north pole onto the equatorial plane, so the
south pole maps to 0, the north pole to infinity and the equator is fixed.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .divisor import INFINITY, ExtendedPoint, PointLike, as_point
from .meromorphic import FactoredRational

__all__ = ["SpherePoint", "NORTH_POLE", "SOUTH_POLE", "project", "unproject", "order_at_infinity"]

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        norm2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(norm2 - 1.0) > UNIT_TOL:
            raise ValueError(f"({self.x}, {self.y}, {self.z}) is not on the unit sphere")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


NORTH_POLE = SpherePoint(0.0, 0.0, 1.0)
SOUTH_POLE = SpherePoint(0.0, 0.0, -1.0)


def project(p: SpherePoint) -> ExtendedPoint:
    if p == NORTH_POLE:
        return INFINITY
    if p.z <= 0:
        return ExtendedPoint(complex(p.x, p.y) / (1.0 - p.z))
    # (x + iy)/(1 - z) == (1 + z)/(x - iy) on the sphere; the second form
    # avoids cancellation in 1 - z near the north pole.
    w = (1.0 + p.z) / complex(p.x, -p.y)
    if not cmath.isfinite(w):
        return INFINITY
    return ExtendedPoint(w)


def unproject(w: PointLike) -> SpherePoint:
    w = as_point(w)
    if w.is_infinite:
        return NORTH_POLE
    z = w.value
    r2 = z.real * z.real + z.imag * z.imag
    if r2 <= 1.0:
        d = 1.0 + r2
        return SpherePoint(2 * z.real / d, 2 * z.imag / d, (r2 - 1.0) / d)
    # same point written in the chart w = 1/z, stable for large |z|
    u = 1.0 / z
    s2 = u.real * u.real + u.imag * u.imag
    d = 1.0 + s2
    return SpherePoint(2 * u.real / d, -2 * u.imag / d, (1.0 - s2) / d)


def order_at_infinity(f: FactoredRational) -> int:
    """Negative for a pole at infinity, positive for a zero there."""
    if f.is_zero:
        raise ValueError("order at infinity undefined for zero function")
    return f.order_at_infinity
