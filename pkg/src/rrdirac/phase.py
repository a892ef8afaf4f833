r"""The unit-modulus phase field that turns zero modes into meromorphic functions.

.. math::

    \chi(z) = \prod_i e^{-i n_i \arg(z - z_i)}

Multiplying a zero mode :math:`u = z^k e^{-\Phi}` by :math:`\chi` gives
:math:`z^k\prod_i (z-z_i)^{-n_i}`, an element of :math:`L(D)`, and the
zero-mode equation becomes the Cauchy-Riemann equation
:math:`\partial_{\bar z}(\chi u) = 0`. Around a flux of :math:`n_k` quanta the
phase of :math:`\chi` changes by :math:`-2\pi n_k`, so :math:`\chi` is single
valued whenever the quanta are integers.

:math:`\chi` is built from principal arguments factor by factor rather than
from fractional powers, which are branch-ambiguous for odd :math:`n_i`.
"""
from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import ContourError, FluxPointError, PhaseTransformError
from .gauge import FluxConfig, LoopPath, check_loop_clear, eval_dphi_dzbar, sample_points
from .meromorphic import FactoredRational
from .wirtinger import d_dzbar
from .zero_modes import Component, ZeroMode

__all__ = [
    "PhaseField",
    "eval_chi",
    "winding",
    "continued_phase_change",
    "single_valued_check",
    "meromorphic_image",
    "cr_field_residual",
    "cr_residual",
    "chi_phi_identity",
]

MAX_STEP = np.pi / 2
MAX_REFINEMENTS = 10


@dataclass(frozen=True)
class PhaseField:
    config: FluxConfig

    def __call__(self, z):
        return eval_chi(self, z)


def eval_chi(p: PhaseField, z):
    cfg = p.config
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    diff = z[..., None] - cfg.positions
    if np.any(diff == 0):
        raise FluxPointError("phase undefined at flux")
    theta = -(cfg.quanta * np.angle(diff)).sum(axis=-1)
    out = np.exp(1j * theta)
    return complex(out) if scalar else out


def _refine_until_resolved(loop: LoopPath, steps_of: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    for _ in range(MAX_REFINEMENTS + 1):
        steps = steps_of(loop.nodes())
        if steps.size == 0 or np.max(np.abs(steps)) < MAX_STEP:
            return steps
        loop = loop.refined()
    raise ContourError("loop too close to flux: phase steps unresolved after refinement")


def winding(p: PhaseField, loop: LoopPath) -> float:
    """Total continuous change of ``arg chi`` once around ``loop``.

    Successive values of chi are joined by the nearest branch; the loop is
    refined (samples doubled) while any step reaches pi/2.
    """
    check_loop_clear(p.config, loop)

    def steps(nodes):
        chi = eval_chi(p, nodes)
        return np.angle(np.roll(chi, -1) / chi)

    return float(np.sum(_refine_until_resolved(loop, steps)))


def continued_phase_change(
    loop: LoopPath,
    positions: Sequence[complex],
    charges: Sequence[float],
) -> float:
    """Phase change of ``prod exp(-i q_j arg(z - p_j))`` continued around ``loop``.

    Each ``arg(z - p_j)`` is unwrapped on its own, so real (non-integer)
    charges are continued correctly too.
    """
    positions = np.asarray(positions, dtype=complex)
    charges = np.asarray(charges, dtype=float)
    if positions.size == 0:
        return 0.0

    def steps(nodes):
        d = nodes[:, None] - positions[None, :]
        if np.any(d == 0):
            raise ContourError("flux on contour")
        return np.angle(np.roll(d, -1, axis=0) / d)

    per_factor = _refine_until_resolved(loop, steps).sum(axis=0)
    return float(-(charges * per_factor).sum())


def single_valued_check(p: PhaseField, loop: LoopPath) -> float:
    """``|chi(start) - chi(start after one traversal)|`` by continuation."""
    check_loop_clear(p.config, loop)
    delta = continued_phase_change(loop, p.config.positions, p.config.quanta)
    start = eval_chi(p, loop.nodes()[0])
    return abs(start - start * np.exp(1j * delta))


def meromorphic_image(
    p: PhaseField,
    m: ZeroMode,
    points: int = 32,
    rng: np.random.Generator | None = None,
    rel_tol: float = 1e-10,
) -> FactoredRational:
    """The rational function ``chi * u`` for a monomial upper mode ``c z^k``.

    The factored result is checked against ``chi * u`` at ``points`` random
    points before it is returned.
    """
    if m.kind is not Component.UPPER:
        raise ValueError("meromorphic image needs an upper-component mode")
    if m.config != p.config:
        raise ValueError("mode and phase field use different flux configurations")
    k = m.monomial_power
    if k is None:
        raise ValueError("meromorphic image needs a monomial mode c*z**k")
    cfg = p.config
    image = FactoredRational(m.poly[k], ((0j, k),) + tuple((z, -n) for z, n in cfg.fluxes))

    rng = np.random.default_rng(0) if rng is None else rng
    z = sample_points(cfg, points, rng)
    lhs = eval_chi(p, z) * m.values(z)
    rhs = image.values(z)
    if np.any(np.abs(lhs - rhs) > rel_tol * (1 + np.abs(rhs))):
        raise PhaseTransformError("phase transform identity violated")
    return image


def cr_field_residual(g: Callable[[complex], complex], cfg: FluxConfig, z: complex, h: float) -> float:
    """``|d_zbar g|`` by centered differences, away from fluxes."""
    z = complex(z)
    if cfg.fluxes and cfg.distance_to_fluxes(z) <= 10 * h:
        raise FluxPointError("residual undefined near flux")
    return abs(d_dzbar(g, z, h))


def cr_residual(p: PhaseField, m: ZeroMode, z: complex, h: float) -> float:
    return cr_field_residual(lambda w: eval_chi(p, w) * m(w), p.config, z, h)


def chi_phi_identity(p: PhaseField, z: complex, h: float) -> float:
    """``|chi * d_zbar(conj chi) + d_zbar Phi|``; vanishes up to O(h^2)."""
    z = complex(z)
    cfg = p.config
    if cfg.fluxes and cfg.distance_to_fluxes(z) <= 10 * h:
        raise FluxPointError("residual undefined near flux")
    dchibar = d_dzbar(lambda w: np.conj(eval_chi(p, w)), z, h)
    return abs(eval_chi(p, z) * dchibar + eval_dphi_dzbar(cfg, z))
