import cmath
import math

import numpy as np
import pytest

from rrdirac.errors import ContourError, FluxPointError
from rrdirac.gauge import Circle, FluxConfig, Polygon, sample_points
from rrdirac.meromorphic import FactoredRational, l_membership
from rrdirac.phase import (
    PhaseField,
    chi_phi_identity,
    continued_phase_change,
    cr_field_residual,
    cr_residual,
    eval_chi,
    meromorphic_image,
    single_valued_check,
    winding,
)
from rrdirac.zero_modes import Component, ZeroMode, zero_mode_basis

from helpers import random_config


def unwrap_oracle(p, loop):
    """np.unwrap of arg chi on a finely sampled copy of the loop."""
    fine = Circle(loop.center, loop.radius, 1 << 16)
    nodes = fine.nodes()
    ang = np.unwrap(np.angle(eval_chi(p, np.append(nodes, nodes[:1]))))
    return ang[-1] - ang[0]


@pytest.mark.parametrize("n, z, expected", [(1, 1j, -1j), (1, 2, 1), (2, 1j, -1)])
def test_chi_examples(n, z, expected):
    assert cmath.isclose(eval_chi(PhaseField(FluxConfig(((0, n),))), z), expected, abs_tol=1e-15)


def test_chi_matches_fractional_power_form_for_even_quanta(rng):
    # for even n the literal ((zbar - zbar_i)/(z - z_i))^(n/2) has no branch ambiguity
    cfg = FluxConfig(((0.2 + 0.1j, 2), (-0.5, -4)))
    for z in sample_points(cfg, 10, rng):
        lit = np.prod([(np.conj(z - p) / (z - p)) ** (n // 2) for p, n in cfg.fluxes])
        assert abs(eval_chi(PhaseField(cfg), z) - lit) < 1e-13


def test_chi_unit_modulus(rng):
    cfg = random_config(rng)
    z = sample_points(cfg, 500, rng, inner=0.0, clearance=1e-6)
    assert np.max(np.abs(np.abs(eval_chi(PhaseField(cfg), z)) - 1)) <= 1e-12


def test_chi_at_flux_fails(single_flux):
    with pytest.raises(FluxPointError, match="phase undefined"):
        eval_chi(PhaseField(single_flux), 0)


@pytest.mark.parametrize("n", [1, 3, -2])
def test_winding_around_one_flux(n):
    p = PhaseField(FluxConfig(((0.3 - 0.2j, n),)))
    loop = Circle(0.3 - 0.2j, 0.5)
    assert abs(winding(p, loop) + 2 * math.pi * n) < 1e-6
    assert abs(winding(p, loop) - unwrap_oracle(p, loop)) < 1e-9


def test_winding_nothing_enclosed():
    p = PhaseField(FluxConfig(((3, 2),)))
    assert abs(winding(p, Circle(0, 1))) < 1e-6


def test_winding_polygon():
    p = PhaseField(FluxConfig(((0.1j, 2), (5, 1))))
    square = Polygon((-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j), 32)
    assert abs(winding(p, square) + 4 * math.pi) < 1e-6


def test_winding_refines_coarse_loops():
    # 16 samples around a 3-quantum flux: steps of 3*2pi/16 > pi/2 until refined
    p = PhaseField(FluxConfig(((0, 3),)))
    assert abs(winding(p, Circle(0, 1, 16)) + 6 * math.pi) < 1e-9


def test_winding_gives_up_near_flux():
    # 1e-6 inside the loop: after 10 doublings steps are still ~1e-4 long,
    # so the phase jumps by nearly pi across the nearest one
    p = PhaseField(FluxConfig((((1 - 1e-6) * cmath.exp(1j), 1),)))
    with pytest.raises(ContourError, match="too close"):
        winding(p, Circle(0, 1.0, 16))


def test_winding_additive(rng):
    for _ in range(10):
        cfg = random_config(rng)
        p = PhaseField(cfg)
        big = Circle(cfg.centroid, 3.0)
        assert abs(winding(p, big) + 2 * math.pi * cfg.total_quanta) < 1e-6
        small = []
        for i, (z, _) in enumerate(cfg.fluxes):
            others = np.delete(cfg.positions, i)
            r = 0.4 * np.abs(others - z).min() if others.size else 0.5
            small.append(winding(p, Circle(z, r)))
        assert abs(winding(p, big) - sum(small)) < 1e-6


def test_single_valued_examples():
    p = PhaseField(FluxConfig(((0, 1),)))
    assert single_valued_check(p, Circle(0, 1)) <= 1e-9
    pair = PhaseField(FluxConfig(((0.5, 1), (-0.5, 2))))
    loop = Circle(0, 2)
    assert abs(winding(pair, loop) + 6 * math.pi) < 1e-6
    assert single_valued_check(pair, loop) <= 1e-9


def test_half_quantum_is_not_single_valued():
    loop = Circle(0, 1)
    delta = continued_phase_change(loop, [0j], [0.5])
    assert abs(delta + math.pi) < 1e-9
    start = np.exp(-0.5j * np.angle(loop.nodes()[0]))
    assert abs(abs(start - start * np.exp(1j * delta)) - 2) < 1e-9


def test_continuation_agrees_with_winding(rng):
    cfg = random_config(rng)
    loop = Circle(cfg.centroid, 3.0)
    delta = continued_phase_change(loop, cfg.positions, cfg.quanta)
    assert abs(delta - winding(PhaseField(cfg), loop)) < 1e-9


def test_image_single_flux(single_flux):
    p = PhaseField(single_flux)
    u0, u1 = zero_mode_basis(single_flux)
    assert meromorphic_image(p, u0) == FactoredRational(1, ((0, -1),))
    assert meromorphic_image(p, u1) == FactoredRational(1)


def test_image_pair(pair_i):
    p = PhaseField(pair_i)
    img = meromorphic_image(p, ZeroMode.canonical(pair_i, 2))
    z = 0.4 + 0.9j
    assert cmath.isclose(img(z), z**2 / (z**2 + 1), rel_tol=1e-14)
    assert l_membership(img, pair_i.divisor())


def test_image_requires_monomial_upper_mode(single_flux):
    p = PhaseField(single_flux)
    with pytest.raises(ValueError):
        meromorphic_image(p, ZeroMode(single_flux, (1.0, 1.0)))
    with pytest.raises(ValueError):
        meromorphic_image(p, ZeroMode(single_flux, (1.0,), Component.LOWER))


def test_cr_residual_second_order(rng):
    for _ in range(5):
        cfg = random_config(rng)
        p = PhaseField(cfg)
        for m in zero_mode_basis(cfg):
            for z in sample_points(cfg, 3, rng):
                r1, r2 = cr_residual(p, m, z, 1e-4), cr_residual(p, m, z, 5e-5)
                assert 2.5 <= r1 / r2 <= 6


def test_cr_residual_exact_for_constant():
    cfg = FluxConfig()
    assert cr_residual(PhaseField(cfg), zero_mode_basis(cfg)[0], 0.2 - 0.4j, 1e-4) <= 1e-12


def test_cr_negative_control(single_flux):
    p = PhaseField(single_flux)
    m = ZeroMode.canonical(single_flux, 0)
    bad = lambda w: eval_chi(p, w) * m(w) * (1 + 0.1 * np.conj(w))
    z = 0.8 - 0.6j
    r = cr_field_residual(bad, single_flux, z, 1e-4)
    assert r >= 1e-3
    assert abs(r - 0.1 * abs(1 / z)) < 1e-6


def test_chi_phi_identity_examples(single_flux):
    p = PhaseField(single_flux)
    # closed form at z = 2: chi * d_zbar(conj chi) = -1/(2 zbar) = -0.25
    r = chi_phi_identity(p, 2, 1e-4)
    assert r < 1e-8
    assert chi_phi_identity(PhaseField(FluxConfig()), 1j, 1e-4) <= 1e-12


def test_chi_phi_identity_second_order(rng):
    for _ in range(5):
        cfg = random_config(rng)
        p = PhaseField(cfg)
        for z in sample_points(cfg, 3, rng):
            r1, r2 = chi_phi_identity(p, z, 1e-4), chi_phi_identity(p, z, 5e-5)
            assert 2.5 <= r1 / r2 <= 6
