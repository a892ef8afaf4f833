r"""Delta-flux magnetic fields and their potentials.

A field :math:`B = 2\pi\sum_i n_i\,\delta(\mathbf r - \mathbf r_i)` (natural
units, flux quantum :math:`2\pi`) is described by a :class:`FluxConfig`. Away
from the fluxes the potential is curl free and, in the Coulomb gauge
:math:`\partial_x A_x + \partial_y A_y = 0` with the holomorphic ambiguity set
to zero, it packs into

.. math::

    F(z) = A_y + i A_x = \sum_i \frac{n_i}{z - z_i},

and the scalar potential :math:`\Phi = \sum_i n_i \log|z - z_i|` gives
:math:`A_x = -\partial_y\Phi`, :math:`A_y = \partial_x\Phi`.

Evaluation routines accept scalars or numpy arrays of complex points.
"""
from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .divisor import Divisor, ExtendedPoint
from .errors import ContourError, FluxPointError

__all__ = [
    "FluxConfig",
    "Circle",
    "Polygon",
    "LoopPath",
    "eval_F",
    "vector_potential",
    "eval_phi",
    "eval_dphi_dz",
    "eval_dphi_dzbar",
    "contour_flux",
    "enclosed_quanta",
    "check_loop_clear",
    "sample_points",
]

ON_CONTOUR_TOL = 1e-12


@dataclass(frozen=True)
class FluxConfig:
    """Point fluxes ``(position, quanta)``.

    Fluxes at bitwise-equal positions are merged and entries whose quanta
    sum to zero are dropped.
    """

    fluxes: tuple[tuple[complex, int], ...] = ()

    def __post_init__(self):
        acc: dict[ExtendedPoint, int] = {}
        for z, n in self.fluxes:
            if isinstance(n, bool) or int(n) != n:
                raise TypeError(f"flux quanta must be integers, got {n!r}")
            key = ExtendedPoint(complex(z))
            acc[key] = acc.get(key, 0) + int(n)
        merged = tuple((p.value, n) for p, n in acc.items() if n != 0)
        object.__setattr__(self, "fluxes", merged)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[complex, int]]) -> FluxConfig:
        return cls(tuple(pairs))

    @property
    def positions(self) -> np.ndarray:
        return np.array([z for z, _ in self.fluxes], dtype=complex)

    @property
    def quanta(self) -> np.ndarray:
        return np.array([n for _, n in self.fluxes], dtype=np.int64)

    @property
    def total_quanta(self) -> int:
        return sum(n for _, n in self.fluxes)

    @property
    def centroid(self) -> complex:
        if not self.fluxes:
            return 0j
        return complex(self.positions.mean())

    def divisor(self) -> Divisor:
        """The flux divisor ``sum n_i z_i``; never has weight at infinity."""
        return Divisor(self.fluxes)

    def distance_to_fluxes(self, z) -> np.ndarray | float:
        """Distance from ``z`` to the nearest flux (``inf`` if there are none)."""
        z = np.asarray(z, dtype=complex)
        if not self.fluxes:
            out = np.full(z.shape, np.inf)
        else:
            out = np.abs(z[..., None] - self.positions).min(axis=-1)
        return float(out) if out.ndim == 0 else out

    def __len__(self) -> int:
        return len(self.fluxes)


def _offsets(cfg: FluxConfig, z, what: str) -> tuple[np.ndarray, bool]:
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    diff = z[..., None] - cfg.positions
    if np.any(diff == 0):
        raise FluxPointError(f"{what}: evaluation at flux point")
    return diff, scalar


def _out(values: np.ndarray, scalar: bool):
    if scalar:
        v = values.item()
        return v
    return values


def eval_F(cfg: FluxConfig, z):
    """Holomorphic potential ``F(z) = sum n_i / (z - z_i)``."""
    diff, scalar = _offsets(cfg, z, "F")
    return _out((cfg.quanta / diff).sum(axis=-1).astype(complex), scalar)


def vector_potential(cfg: FluxConfig, x, y):
    """Real potential ``(A_x, A_y)`` with ``A_y + i A_x = F(x + iy)``."""
    f = eval_F(cfg, np.asarray(x) + 1j * np.asarray(y))
    return np.imag(f), np.real(f)


def eval_phi(cfg: FluxConfig, z):
    """Scalar potential ``Phi = sum n_i log|z - z_i|``."""
    diff, scalar = _offsets(cfg, z, "Phi")
    return _out((cfg.quanta * np.log(np.abs(diff))).sum(axis=-1).astype(float), scalar)


def eval_dphi_dz(cfg: FluxConfig, z):
    diff, scalar = _offsets(cfg, z, "dPhi/dz")
    return _out(0.5 * (cfg.quanta / diff).sum(axis=-1).astype(complex), scalar)


def eval_dphi_dzbar(cfg: FluxConfig, z):
    """Closed form ``(1/2) sum n_i / conj(z - z_i)``."""
    diff, scalar = _offsets(cfg, z, "dPhi/dzbar")
    return _out(0.5 * (cfg.quanta / np.conj(diff)).sum(axis=-1).astype(complex), scalar)


@dataclass(frozen=True)
class Circle:
    """Counter-clockwise circle sampled at ``samples`` equispaced nodes."""

    center: complex
    radius: float
    samples: int = 4096

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise ValueError("circle radius must be positive")
        if self.samples < 16:
            raise ValueError("a loop needs at least 16 samples")

    def nodes(self) -> np.ndarray:
        t = 2 * np.pi * np.arange(self.samples) / self.samples
        return self.center + self.radius * np.exp(1j * t)

    def quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and trapezoid weights for ``integral f(z) dz``."""
        t = 2 * np.pi * np.arange(self.samples) / self.samples
        e = np.exp(1j * t)
        return self.center + self.radius * e, 1j * self.radius * e * (2 * np.pi / self.samples)

    def refined(self) -> Circle:
        return Circle(self.center, self.radius, 2 * self.samples)

    def contains(self, z: complex) -> bool:
        return abs(complex(z) - self.center) < self.radius


@dataclass(frozen=True)
class Polygon:
    """Closed counter-clockwise polygon, ``samples_per_edge`` steps per edge."""

    vertices: tuple[complex, ...]
    samples_per_edge: int = 256

    def __post_init__(self):
        verts = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        if self.samples_per_edge < 16:
            raise ValueError("a loop needs at least 16 samples per edge")
        v = np.array(verts)
        area = 0.5 * np.sum(v.real * np.roll(v.imag, -1) - np.roll(v.real, -1) * v.imag)
        if area <= 0:
            raise ValueError("polygon vertices must be in counter-clockwise order")

    def nodes(self) -> np.ndarray:
        v = np.array(self.vertices)
        s = np.arange(self.samples_per_edge) / self.samples_per_edge
        edges = np.roll(v, -1) - v
        return (v[:, None] + s[None, :] * edges[:, None]).ravel()

    def quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        v = np.array(self.vertices)
        m = self.samples_per_edge
        step = (np.roll(v, -1) - v) / m
        weights = np.repeat(step, m)
        # vertex nodes: half of the incoming step plus half of the outgoing step
        weights[::m] = 0.5 * (step + np.roll(step, 1))
        return self.nodes(), weights

    def refined(self) -> Polygon:
        return Polygon(self.vertices, 2 * self.samples_per_edge)

    def contains(self, z: complex) -> bool:
        # even-odd ray casting towards +x
        z = complex(z)
        inside = False
        v = self.vertices
        for a, b in zip(v, v[1:] + v[:1]):
            if (a.imag > z.imag) != (b.imag > z.imag):
                x = a.real + (z.imag - a.imag) * (b.real - a.real) / (b.imag - a.imag)
                if x > z.real:
                    inside = not inside
        return inside


LoopPath = Circle | Polygon


def check_loop_clear(cfg: FluxConfig, loop: LoopPath, tol: float = ON_CONTOUR_TOL) -> None:
    """Raise :class:`ContourError` if a flux lies within ``tol`` of the loop."""
    if not cfg.fluxes:
        return
    a = loop.nodes()
    b = np.roll(a, -1)
    seg = (b - a)[:, None]
    p = cfg.positions[None, :] - a[:, None]
    denom = np.abs(seg) ** 2
    t = np.clip((p * np.conj(seg)).real / np.where(denom == 0, 1, denom), 0.0, 1.0)
    dist = np.abs(p - t * seg)
    if dist.min() <= tol:
        k = int(np.argmin(dist.min(axis=0)))
        raise ContourError(f"flux on contour: flux at {cfg.positions[k]} touches the loop")


def contour_flux(cfg: FluxConfig, loop: LoopPath) -> complex:
    """Trapezoid-rule value of the loop integral of ``F(z) dz``.

    For a loop enclosing fluxes ``S`` the exact value is ``2*pi*i*sum(n_i, S)``.
    """
    check_loop_clear(cfg, loop)
    nodes, weights = loop.quadrature()
    if not cfg.fluxes:
        return 0j
    return complex(np.sum(eval_F(cfg, nodes) * weights))


def enclosed_quanta(cfg: FluxConfig, loop: LoopPath) -> int:
    """Sum of quanta whose positions lie inside ``loop`` (geometric test)."""
    return sum(n for z, n in cfg.fluxes if loop.contains(z))


def sample_points(
    cfg: FluxConfig,
    count: int,
    rng: np.random.Generator,
    inner: float = 0.5,
    outer: float = 2.0,
    clearance: float = 0.1,
) -> np.ndarray:
    """Random points in the annulus ``inner <= |z - centroid| <= outer``.

    Points closer than ``clearance`` to any flux are rejected and redrawn.
    """
    c = cfg.centroid
    out: list[complex] = []
    while len(out) < count:
        need = 2 * (count - len(out)) + 8
        r = np.sqrt(rng.uniform(inner**2, outer**2, need))
        theta = rng.uniform(0, 2 * math.pi, need)
        z = c + r * np.exp(1j * theta)
        keep = np.atleast_1d(cfg.distance_to_fluxes(z)) >= clearance
        out.extend(z[keep].tolist())
    return np.array(out[:count], dtype=complex)
