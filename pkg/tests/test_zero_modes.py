import cmath
import math

import mpmath
import numpy as np
import pytest

from rrdirac.errors import FluxPointError
from rrdirac.gauge import FluxConfig, sample_points
from rrdirac.meromorphic import Singular
from rrdirac.zero_modes import (
    DIVERGENCE,
    Component,
    ZeroMode,
    dimension_by_rank,
    dirac_equation_rows,
    dirac_field_residual,
    dirac_residual,
    eval_mode,
    growth_exponent,
    zero_mode_basis,
)

from helpers import random_config

RADII = np.logspace(1, 3, 21)


def mp_residual(cfg, k, z, lower=False):
    """(d_zbar + d_zbar Phi) u at 40 digits, derivatives by mpmath.diff."""
    mpmath.mp.dps = 40
    pos = [mpmath.mpc(p.real, p.imag) for p in cfg.positions]
    ns = [int(n) for n in cfg.quanta]

    def phi(x, y):
        w = mpmath.mpc(x, y)
        return sum(n * mpmath.log(abs(w - p)) for p, n in zip(pos, ns))

    def u(x, y):
        w = mpmath.mpc(x, y)
        if lower:
            return mpmath.conj(w) ** k * mpmath.exp(phi(x, y))
        return w**k * mpmath.exp(-phi(x, y))

    x, y = mpmath.mpf(z.real), mpmath.mpf(z.imag)
    ux = mpmath.diff(lambda t: u(t, y), x)
    uy = mpmath.diff(lambda t: u(x, t), y)
    px = mpmath.diff(lambda t: phi(t, y), x)
    py = mpmath.diff(lambda t: phi(x, t), y)
    if lower:
        return abs((ux - 1j * uy) / 2 - (px - 1j * py) / 2 * u(x, y))
    return abs((ux + 1j * uy) / 2 + (px + 1j * py) / 2 * u(x, y))


def test_basis_single_flux(single_flux):
    modes = zero_mode_basis(single_flux)
    assert len(modes) == 2
    z = 0.6 - 1.3j
    assert cmath.isclose(modes[0](z), 1 / abs(z))
    assert cmath.isclose(modes[1](z), z / abs(z))


def test_basis_empty_and_pair(pair_i):
    modes = zero_mode_basis(FluxConfig())
    assert len(modes) == 1 and modes[0](3 - 2j) == 1
    assert len(zero_mode_basis(pair_i)) == 3


def test_basis_negative_total_is_empty():
    assert zero_mode_basis(FluxConfig(((0, -2), (1, 1)))) == []


def test_eval_mode_examples(single_flux):
    assert eval_mode(ZeroMode.canonical(single_flux, 0), 2) == 0.5
    assert eval_mode(ZeroMode.canonical(single_flux, 1), 2) == 1.0
    assert eval_mode(ZeroMode.canonical(single_flux, 0), 0) is DIVERGENCE
    assert isinstance(DIVERGENCE, Singular)


def test_eval_mode_negative_flux_vanishes():
    cfg = FluxConfig(((0, -1), (1, 2)))
    assert eval_mode(ZeroMode.canonical(cfg, 0), 0) == 0
    assert eval_mode(ZeroMode(cfg, (1.0,), Component.LOWER), 0) is DIVERGENCE


@pytest.mark.parametrize("seed", range(4))
def test_closed_form_solves_equation_high_precision(seed):
    rng = np.random.default_rng(seed)
    cfg = random_config(rng, max_fluxes=3)
    z = complex(sample_points(cfg, 1, rng)[0])
    for k in (0, cfg.total_quanta):
        assert mp_residual(cfg, k, z) < 1e-25
    assert mp_residual(cfg, 0, z, lower=True) < 1e-25


def test_corrupting_the_mode_breaks_the_equation(single_flux):
    mpmath.mp.dps = 40
    # control for the oracle itself: u * (1 + 0.1 zbar) is not a solution
    m = ZeroMode.canonical(single_flux, 1)
    bad = lambda w: m(w) * (1 + 0.1 * np.conj(w))
    z = 1.2 + 0.7j
    r = dirac_field_residual(bad, single_flux, z, 1e-4)
    # d_zbar of the extra factor contributes 0.1 * u exactly
    assert r >= 1e-3
    assert abs(r - 0.1 * abs(m(z))) < 1e-6


def test_residual_second_order(rng):
    for _ in range(5):
        cfg = random_config(rng)
        for m in zero_mode_basis(cfg):
            for z in sample_points(cfg, 4, rng):
                r1, r2 = dirac_residual(m, z, 1e-4), dirac_residual(m, z, 5e-5)
                assert 2.5 <= r1 / r2 <= 6


def test_residual_exact_for_constant():
    m = zero_mode_basis(FluxConfig())[0]
    assert dirac_residual(m, 0.3 + 0.1j, 1e-4) <= 1e-12


def test_residual_refused_near_flux(single_flux):
    with pytest.raises(FluxPointError, match="near flux"):
        dirac_residual(ZeroMode.canonical(single_flux, 0), 5e-4, 1e-4)


def test_lower_component_residual(single_flux):
    v = ZeroMode(single_flux, (1.0, 0.5), Component.LOWER)
    r1, r2 = dirac_residual(v, 1 + 1j, 1e-4), dirac_residual(v, 1 + 1j, 5e-5)
    assert 2.5 <= r1 / r2 <= 6


def test_two_component_rows(rng):
    cfg = random_config(rng)
    u = ZeroMode.canonical(cfg, 1)
    v = ZeroMode(cfg, (1.0,), Component.LOWER)
    z = complex(sample_points(cfg, 1, rng)[0])
    a = dirac_equation_rows(u, v, cfg, z, 1e-4)
    b = dirac_equation_rows(u, v, cfg, z, 5e-5)
    for coarse, fine in zip(a, b):
        assert 2.5 <= coarse / fine <= 6
    # swapping the components is not a solution
    wrong = dirac_equation_rows(v, u, cfg, z, 1e-4)
    assert max(wrong) > 1e-3
    assert dirac_equation_rows(u, None, cfg, z, 1e-4)[0] == 0


@pytest.mark.parametrize(
    "kind, poly, expected",
    [
        (Component.LOWER, (1.0,), 1.0),
        (Component.UPPER, (0, 0, 1.0), 1.0),
        (Component.UPPER, (0, 1.0), 0.0),
    ],
)
def test_growth_examples(single_flux, kind, poly, expected):
    g = growth_exponent(ZeroMode(single_flux, poly, kind), cmath.exp(0.3j), RADII)
    assert abs(g - expected) < 1e-9


def test_growth_requires_enough_radii(single_flux):
    m = ZeroMode.canonical(single_flux, 0)
    with pytest.raises(ValueError):
        growth_exponent(m, 1, [10, 100])
    with pytest.raises(ValueError):
        growth_exponent(m, 1, [10, 20, 30])


def test_growth_of_monomials(pair_i):
    for k in range(4):
        g = growth_exponent(ZeroMode.canonical(pair_i, k), 1, RADII)
        assert abs(g - (k - 2)) < 0.05


def test_rank_examples(single_flux, pair_i, rng):
    modes = zero_mode_basis(single_flux)
    assert dimension_by_rank(modes, sample_points(single_flux, 8, rng)) == 2
    modes = zero_mode_basis(pair_i)
    assert dimension_by_rank(modes, sample_points(pair_i, 8, rng)) == 3
    u0 = zero_mode_basis(pair_i)[0]
    assert dimension_by_rank([u0, u0], sample_points(pair_i, 8, rng)) == 1


def test_rank_rejects_degenerate_samples(single_flux):
    modes = zero_mode_basis(single_flux)
    with pytest.raises(ValueError, match="degenerate"):
        dimension_by_rank(modes, [1, 1, 2, 3])
    with pytest.raises(ValueError):
        dimension_by_rank(modes, [1, 2, 3])


def test_rank_random_configs():
    rng = np.random.default_rng(7)
    for _ in range(20):
        cfg = random_config(rng)
        modes = zero_mode_basis(cfg)
        pts = sample_points(cfg, len(modes) + 4, rng)
        assert dimension_by_rank(modes, pts) == cfg.total_quanta + 1
