"""Sampling of scalar and complex fields on a rectangular grid (CSV output)."""
from __future__ import annotations

import csv
import re
from collections.abc import Callable
from typing import TextIO

import numpy as np

from .config import Grid
from .gauge import FluxConfig, eval_F, eval_phi
from .phase import PhaseField, eval_chi
from .zero_modes import ZeroMode

NEAR_FLUX = 1e-9
_MODE = re.compile(r"u(\d+)")


def field_names(cfg: FluxConfig) -> list[str]:
    return ["phi", "F", "chi"] + [f"u{k}" for k in range(cfg.total_quanta + 1)]


def field_function(cfg: FluxConfig, name: str) -> tuple[Callable[[np.ndarray], np.ndarray], bool]:
    """Vectorized evaluator for ``name`` and whether the field is complex."""
    if name == "phi":
        return (lambda z: eval_phi(cfg, z)), False
    if name == "F":
        return (lambda z: eval_F(cfg, z)), True
    if name == "chi":
        p = PhaseField(cfg)
        return (lambda z: eval_chi(p, z)), True
    m = _MODE.fullmatch(name)
    if m and int(m.group(1)) <= cfg.total_quanta:
        return ZeroMode.canonical(cfg, int(m.group(1))).values, True
    raise KeyError(f"unknown field {name!r}; choose from {', '.join(field_names(cfg))}")


def grid_nodes(grid: Grid) -> np.ndarray:
    """Grid nodes in row-major order with y as the outer index."""
    xs = np.linspace(grid.xmin, grid.xmax, grid.nx)
    ys = np.linspace(grid.ymin, grid.ymax, grid.ny)
    x, y = np.meshgrid(xs, ys)
    return (x + 1j * y).ravel()


def sample(cfg: FluxConfig, grid: Grid, name: str) -> tuple[np.ndarray, np.ndarray, bool]:
    """Nodes and field values; nodes within 1e-9 of a flux hold ``nan``."""
    fn, is_complex = field_function(cfg, name)
    nodes = grid_nodes(grid)
    ok = np.atleast_1d(cfg.distance_to_fluxes(nodes)) > NEAR_FLUX
    values = np.full(nodes.shape, complex(np.nan, np.nan) if is_complex else np.nan,
                     dtype=complex if is_complex else float)
    if ok.any():
        values[ok] = fn(nodes[ok])
    return nodes, values, is_complex


def write_csv(fh: TextIO, nodes: np.ndarray, values: np.ndarray, is_complex: bool) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["x", "y", "re", "im"] if is_complex else ["x", "y", "value", ""])
    for z, v in zip(nodes.tolist(), values.tolist()):
        if is_complex:
            w.writerow([repr(z.real), repr(z.imag), repr(v.real), repr(v.imag)])
        else:
            w.writerow([repr(z.real), repr(z.imag), repr(v), ""])
