r"""Zero-energy solutions of the Dirac equation in a delta-flux field.

With :math:`E = 0` the complex-coordinate Dirac equation splits into

.. math::

    (\partial_{\bar z} + \partial_{\bar z}\Phi)\,u = 0, \qquad
    (\partial_z - \partial_z\Phi)\,v = 0,

solved by :math:`u = f(z)e^{-\Phi} = f(z)\prod_i|z-z_i|^{-n_i}` and
:math:`v = g(\bar z)\prod_i|z-z_i|^{n_i}`. When no weight sits at infinity,
``v`` grows without bound and ``u`` stays bounded only for polynomial ``f``
of degree at most :math:`\sum n_i`, leaving :math:`1+\sum n_i` modes.
"""
from __future__ import annotations

import enum
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import FluxPointError
from .gauge import FluxConfig, eval_dphi_dz, eval_dphi_dzbar, vector_potential
from .meromorphic import Singular
from .wirtinger import d_dz, d_dzbar, partials

__all__ = [
    "Component",
    "DIVERGENCE",
    "ZeroMode",
    "zero_mode_basis",
    "eval_mode",
    "dirac_field_residual",
    "dirac_residual",
    "dirac_equation_rows",
    "growth_exponent",
    "dimension_by_rank",
]

DIVERGENCE = Singular.DIVERGENCE


class Component(enum.Enum):
    UPPER = "u"
    LOWER = "v"


@dataclass(frozen=True)
class ZeroMode:
    """A closed-form zero mode.

    ``poly`` holds polynomial coefficients, lowest degree first. For the
    upper component the polynomial is in ``z``; for the lower one it is in
    ``conj(z)``.
    """

    config: FluxConfig
    poly: tuple[complex, ...] = (1.0,)
    kind: Component = Component.UPPER

    def __post_init__(self):
        poly = tuple(complex(c) for c in self.poly)
        while len(poly) > 1 and poly[-1] == 0:
            poly = poly[:-1]
        if not poly:
            raise ValueError("polynomial needs at least one coefficient")
        object.__setattr__(self, "poly", poly)

    @classmethod
    def canonical(cls, cfg: FluxConfig, k: int) -> ZeroMode:
        """The upper-component mode with ``f(z) = z**k``."""
        return cls(cfg, (0.0,) * k + (1.0,))

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def monomial_power(self) -> int | None:
        """``k`` if the polynomial is ``c*z**k``, else ``None``."""
        nonzero = [i for i, c in enumerate(self.poly) if c != 0]
        return nonzero[0] if len(nonzero) == 1 else None

    def _exponents(self) -> np.ndarray:
        n = self.config.quanta.astype(float)
        return -n if self.kind is Component.UPPER else n

    def values(self, z) -> np.ndarray:
        """Vectorized evaluation; divergent points give complex ``nan``."""
        z = np.asarray(z, dtype=complex)
        w = z if self.kind is Component.UPPER else np.conj(z)
        out = np.polynomial.polynomial.polyval(w, np.array(self.poly)).astype(complex)
        if not self.config.fluxes:
            return out
        dist = np.abs(z[..., None] - self.config.positions)
        exps = self._exponents()
        at = dist == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            mag = np.where(at, np.where(exps > 0, 0.0, 1.0), dist) ** exps
        out = out * mag.prod(axis=-1)
        divergent = np.any(at & (exps < 0), axis=-1)
        return np.where(divergent, complex(np.nan, np.nan), out)

    def __call__(self, z: complex) -> complex:
        return complex(self.values(complex(z)))


def zero_mode_basis(cfg: FluxConfig) -> list[ZeroMode]:
    """Canonical modes ``z**k * exp(-Phi)``, ``k = 0..total_quanta``.

    Negative total flux gives an empty list.
    """
    if cfg.total_quanta < 0:
        return []
    return [ZeroMode.canonical(cfg, k) for k in range(cfg.total_quanta + 1)]


def eval_mode(m: ZeroMode, z: complex) -> complex | Singular:
    value = m.values(complex(z))
    if np.isnan(value):
        return DIVERGENCE
    return complex(value)


def _require_clear(cfg: FluxConfig, z: complex, h: float) -> None:
    if cfg.fluxes and cfg.distance_to_fluxes(z) <= 10 * h:
        raise FluxPointError("residual undefined near flux")


def dirac_field_residual(
    u: Callable[[complex], complex],
    cfg: FluxConfig,
    z: complex,
    h: float,
    kind: Component = Component.UPPER,
) -> float:
    """``|(d_zbar + d_zbar Phi) u|`` (or ``|(d_z - d_z Phi) v|`` for LOWER).

    The derivative of the field is a centered difference; the derivative of
    ``Phi`` is the closed form.
    """
    z = complex(z)
    _require_clear(cfg, z, h)
    if kind is Component.UPPER:
        return abs(d_dzbar(u, z, h) + eval_dphi_dzbar(cfg, z) * u(z))
    return abs(d_dz(u, z, h) - eval_dphi_dz(cfg, z) * u(z))


def dirac_residual(m: ZeroMode, z: complex, h: float) -> float:
    return dirac_field_residual(m, m.config, z, h, m.kind)


def dirac_equation_rows(
    u: Callable[[complex], complex] | None,
    v: Callable[[complex], complex] | None,
    cfg: FluxConfig,
    z: complex,
    h: float,
) -> tuple[float, float]:
    """Residuals of both rows of the real-coordinate Dirac equation at E = 0.

    Uses ``(A_x, A_y)`` from :func:`vector_potential` rather than ``Phi``::

        row 1: (-i dx - A_x - dy + i A_y) v
        row 2: (-i dx - A_x + dy - i A_y) u

    A missing component is taken to be identically zero.
    """
    z = complex(z)
    _require_clear(cfg, z, h)
    ax, ay = vector_potential(cfg, z.real, z.imag)
    rows = []
    for field, sign in ((v, -1.0), (u, 1.0)):
        if field is None:
            rows.append(0.0)
            continue
        fx, fy = partials(field, z, h)
        rows.append(abs(-1j * fx - ax * field(z) + sign * (fy - 1j * ay * field(z))))
    return rows[0], rows[1]


def growth_exponent(m: ZeroMode, direction: complex, radii: Sequence[float]) -> float:
    """Least-squares slope of ``log|mode(R * direction)|`` against ``log R``.

    A positive slope means the mode is unbounded at infinity.
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size < 3:
        raise ValueError("growth exponent needs at least 3 radii")
    if np.any(np.diff(radii) <= 0) or radii[0] <= 0:
        raise ValueError("radii must be positive and increasing")
    if radii[-1] / radii[0] < 100:
        raise ValueError("radii must span at least two decades")
    direction = complex(direction)
    if abs(abs(direction) - 1) > 1e-9:
        raise ValueError("direction must have unit modulus")
    vals = m.values(radii * direction)
    if np.any(np.isnan(vals)) or np.any(vals == 0):
        raise FluxPointError("growth path meets a flux or a zero of the mode")
    slope, _ = np.polyfit(np.log(radii), np.log(np.abs(vals)), 1)
    return float(slope)


def dimension_by_rank(
    modes: Sequence[ZeroMode],
    samples: Sequence[complex],
    rel_tol: float = 1e-8,
) -> int:
    """Numerical rank of the ``len(samples) x len(modes)`` evaluation matrix.

    Singular values below ``rel_tol`` times the largest one are treated as 0.
    """
    samples = np.asarray(samples, dtype=complex)
    if len(samples) < len(modes) + 2:
        raise ValueError("need at least len(modes) + 2 sample points")
    if len(np.unique(samples)) != len(samples):
        raise ValueError("degenerate sample set: repeated points")
    if not modes:
        return 0
    mat = np.column_stack([m.values(samples) for m in modes])
    if not np.all(np.isfinite(mat)):
        raise FluxPointError("sample point at a flux")
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))
