r"""Divisors on the Riemann sphere.

A divisor is a finite formal sum :math:`D = \sum_p n_p\,p` of points of the
extended plane :math:`\mathbb{C}\cup\{\infty\}` with integer coefficients.
Divisors form an abelian group under pointwise addition of coefficients and
carry the partial order :math:`D \ge 0` iff every coefficient is nonnegative.

Points are identified by the exact bit pattern of their coordinates. Two
flux positions that differ in the last ulp are different points; nothing is
merged by tolerance.
"""
from __future__ import annotations

import struct
from collections.abc import Iterable, Iterator, Mapping
from typing import Union

__all__ = [
    "ExtendedPoint",
    "INFINITY",
    "Divisor",
    "as_point",
]

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class ExtendedPoint:
    """A point of the Riemann sphere: a finite complex number or infinity.

    Finite points compare equal iff the stored real and imaginary parts are
    bitwise equal, so ``0.0`` and ``-0.0`` are distinct points.
    """

    __slots__ = ("_value", "_key")

    def __init__(self, value: complex | None):
        if value is None:
            self._value = None
            self._key = None
        else:
            value = complex(value)
            self._value = value
            self._key = struct.pack("<dd", value.real, value.imag)

    @classmethod
    def infinity(cls) -> ExtendedPoint:
        return INFINITY

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> complex:
        """The finite coordinate; raises for the point at infinity."""
        if self._value is None:
            raise ValueError("the point at infinity has no finite coordinate")
        return self._value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtendedPoint):
            return NotImplemented
        return self._key == other._key and self.is_infinite == other.is_infinite

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self._value is None:
            return "ExtendedPoint(inf)"
        return f"ExtendedPoint({self._value!r})"

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)


INFINITY = ExtendedPoint(None)

PointLike = Union[ExtendedPoint, complex, float, int]


def as_point(p: PointLike) -> ExtendedPoint:
    """Coerce a number (or an ExtendedPoint) to an ExtendedPoint."""
    if isinstance(p, ExtendedPoint):
        return p
    return ExtendedPoint(complex(p))


def _checked(n: int) -> int:
    if not INT_MIN <= n <= INT_MAX:
        raise OverflowError(f"divisor coefficient {n} exceeds 64-bit range")
    return n


class Divisor(Mapping):
    """Immutable finite map from points to nonzero integer coefficients.

    Construct from a mapping or an iterable of ``(point, coefficient)``
    pairs; repeated points are summed and zero coefficients dropped.

    >>> D = Divisor({1j: 1, -1j: 1})
    >>> D.degree
    2
    >>> (D + (-D)).is_zero()
    True
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[PointLike, int] | Iterable[tuple[PointLike, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExtendedPoint, int] = {}
        for p, n in items:
            if isinstance(n, bool) or int(n) != n:
                raise TypeError(f"divisor coefficients must be integers, got {n!r}")
            key = as_point(p)
            acc[key] = _checked(acc.get(key, 0) + int(n))
        self._terms = {p: n for p, n in acc.items() if n != 0}

    @classmethod
    def point(cls, p: PointLike, n: int = 1) -> Divisor:
        return cls({as_point(p): n})

    # Mapping protocol; missing points have coefficient 0.
    def __getitem__(self, p: PointLike) -> int:
        return self._terms.get(as_point(p), 0)

    def __contains__(self, p: object) -> bool:
        try:
            return as_point(p) in self._terms  # type: ignore[arg-type]
        except (TypeError, ValueError):
            return False

    def __iter__(self) -> Iterator[ExtendedPoint]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: Divisor) -> Divisor:
        if not isinstance(other, Divisor):
            return NotImplemented
        acc = dict(self._terms)
        for p, n in other._terms.items():
            acc[p] = _checked(acc.get(p, 0) + n)
        return Divisor(acc)

    def __neg__(self) -> Divisor:
        return Divisor({p: -n for p, n in self._terms.items()})

    def __sub__(self, other: Divisor) -> Divisor:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return Divisor({p: _checked(k * n) for p, n in self._terms.items()})

    __rmul__ = __mul__

    @property
    def degree(self) -> int:
        return sum(self._terms.values())

    @property
    def support(self) -> frozenset[ExtendedPoint]:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_effective(self) -> bool:
        """True iff ``D >= 0``; the empty divisor is effective."""
        return all(n >= 0 for n in self._terms.values())

    def __repr__(self) -> str:
        if not self._terms:
            return "Divisor(0)"
        body = ", ".join(f"{p}: {n}" for p, n in self._terms.items())
        return f"Divisor({{{body}}})"
