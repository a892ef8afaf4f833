r"""Factored rational functions on the sphere and the basis of :math:`L(D)`.

Every meromorphic function on the sphere is rational, so it is kept in the
factored form :math:`c\prod_i (z-a_i)^{m_i}` with integer :math:`m_i`.
Nothing is ever expanded, which keeps divisors exact.

For :math:`D=\sum n_i p_i` with no weight at infinity and
:math:`\deg D\ge 0`, the space :math:`L(D)=\{h : \operatorname{div}(h)+D\ge 0\}`
is spanned by :math:`z^k f_D(z)`, :math:`f_D=\prod (z-p_i)^{-n_i}`,
:math:`0\le k\le \deg D`.
"""
from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .divisor import INFINITY, Divisor, ExtendedPoint, as_point

__all__ = [
    "Singular",
    "POLE",
    "FactoredRational",
    "LBasis",
    "Membership",
    "l_basis",
    "l_membership",
]


class Singular(enum.Enum):
    """Marker values returned instead of a number at singular points."""

    POLE = "pole"
    DIVERGENCE = "divergence"


POLE = Singular.POLE


def _merge(factors: Iterable[tuple[complex, int]]) -> tuple[tuple[complex, int], ...]:
    acc: dict[ExtendedPoint, int] = {}
    for root, m in factors:
        if isinstance(m, bool) or int(m) != m:
            raise TypeError(f"multiplicities must be integers, got {m!r}")
        key = as_point(root)
        if key.is_infinite:
            raise ValueError("factor roots must be finite")
        acc[key] = acc.get(key, 0) + int(m)
    return tuple((p.value, m) for p, m in acc.items() if m != 0)


@dataclass(frozen=True)
class FactoredRational:
    """``scale * prod((z - root)**mult)``.

    Repeated roots are merged on construction. ``scale == 0`` is the zero
    function and carries no factors.
    """

    scale: complex = 1.0
    factors: tuple[tuple[complex, int], ...] = ()

    def __post_init__(self):
        scale = complex(self.scale)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "factors", () if scale == 0 else _merge(self.factors))

    @classmethod
    def constant(cls, c: complex) -> FactoredRational:
        return cls(c)

    @classmethod
    def monomial(cls, k: int, scale: complex = 1.0) -> FactoredRational:
        return cls(scale, ((0j, k),))

    @property
    def is_zero(self) -> bool:
        return self.scale == 0

    @property
    def order_at_infinity(self) -> int:
        """Order of vanishing at infinity: ``-sum(multiplicities)``."""
        if self.is_zero:
            raise ValueError("order undefined for zero function")
        return -sum(m for _, m in self.factors)

    def divisor(self) -> Divisor:
        """Zeros count positive, poles negative, infinity included."""
        if self.is_zero:
            raise ValueError("divisor undefined for zero function")
        d = Divisor(self.factors)
        return d + Divisor({INFINITY: self.order_at_infinity})

    def __mul__(self, other: FactoredRational) -> FactoredRational:
        if isinstance(other, (int, float, complex)):
            other = FactoredRational(other)
        if not isinstance(other, FactoredRational):
            return NotImplemented
        return FactoredRational(self.scale * other.scale, self.factors + other.factors)

    __rmul__ = __mul__

    def __call__(self, z: complex) -> complex | Singular:
        """Evaluate at a finite point; returns :data:`POLE` at a pole."""
        z = complex(z)
        if self.is_zero:
            return 0j
        for root, m in self.factors:
            if z == root:
                return POLE if m < 0 else 0j
        out = self.scale
        for root, m in self.factors:
            out *= (z - root) ** m
        return out

    def values(self, z) -> np.ndarray:
        """Vectorized evaluation; poles become complex ``nan``."""
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.scale, dtype=complex)
        pole = np.zeros(z.shape, dtype=bool)
        for root, m in self.factors:
            diff = z - root
            at_root = diff == 0
            if m < 0:
                pole |= at_root
            with np.errstate(divide="ignore", invalid="ignore"):
                out *= np.where(at_root, 0.0 if m > 0 else 1.0, diff) ** m
        out[pole] = complex(np.nan, np.nan)
        return out

    def __repr__(self) -> str:
        if self.is_zero:
            return "FactoredRational(0)"
        terms = " ".join(f"(z-{r})^{m}" for r, m in self.factors)
        return f"FactoredRational({self.scale} {terms})".rstrip()


@dataclass(frozen=True)
class LBasis:
    """Basis ``z^k f_D(z)``, ``k = 0..deg D``, of the space L(D)."""

    divisor: Divisor
    elements: tuple[FactoredRational, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k: int) -> FactoredRational:
        return self.elements[k]


def l_basis(d: Divisor) -> LBasis:
    """Return the monomial basis of L(D).

    Raises ``ValueError`` when D has weight at infinity; the caller should
    re-project so that infinity is not in the support. Divisors of negative
    degree give an empty basis (L(D) is the zero space).
    """
    if d[INFINITY] != 0:
        raise ValueError("re-project base point: divisor has nonzero coefficient at infinity")
    if d.degree < 0:
        return LBasis(d, ())
    f_d = tuple((p.value, -n) for p, n in d.items())
    elements = tuple(FactoredRational(1.0, f_d + ((0j, k),)) for k in range(d.degree + 1))
    return LBasis(d, elements)


@dataclass(frozen=True)
class Membership:
    """Result of :func:`l_membership`; truthy iff the function is in L(D).

    ``by_convention`` is set when ``h`` is the zero function, which belongs
    to every L(D) although it has no divisor.
    """

    member: bool
    by_convention: bool = False

    def __bool__(self) -> bool:
        return self.member


def l_membership(h: FactoredRational, d: Divisor) -> Membership:
    if h.is_zero:
        return Membership(True, by_convention=True)
    return Membership((h.divisor() + d).is_effective())
