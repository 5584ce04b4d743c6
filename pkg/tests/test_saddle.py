import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from rmtk.model import FormalScalar, Potential
from rmtk.saddle import (
    NegativeDensityError,
    formal_quartic,
    gamma_squared_series,
    marchenko_pastur_density,
    marchenko_pastur_edges,
    mass,
    quartic_one_cut_gamma2,
    quartic_potential,
    quartic_two_cut,
    semicircle_density,
    solve_one_cut,
    tricomi_resolvent,
    two_point_one_cut,
    two_point_q2,
)


def test_semicircle():
    assert semicircle_density(0.0) == pytest.approx(1 / math.pi)
    assert semicircle_density(2.0) == 0 and semicircle_density(-2.0) == 0
    assert quad(semicircle_density, -2, 2)[0] == pytest.approx(1, abs=1e-10)


def test_marchenko_pastur():
    lo, hi = marchenko_pastur_edges(4.0, 1.5)
    assert (lo, hi) == pytest.approx((1.5, 13.5))
    assert marchenko_pastur_density(20.0, 4.0, 1.5) == 0
    assert quad(lambda x: marchenko_pastur_density(x, 4.0, 1.5), lo, hi)[0] == pytest.approx(1, abs=1e-8)
    x = np.array([0.5, 1.0, 3.0])
    ratio = marchenko_pastur_density(x, 1.0) / np.sqrt((4 - x) / x)
    assert np.allclose(ratio, ratio[0])
    with pytest.raises(ValueError):
        marchenko_pastur_density(1.0, 0.5)


def test_gaussian_one_cut():
    c = solve_one_cut(Potential.gaussian())
    assert (c.c, c.gamma) == pytest.approx((0.0, 1.0))
    assert c.edges == pytest.approx((2.0, -2.0))
    x = np.linspace(-1.9, 1.9, 11)
    assert np.allclose(c.density(x), [semicircle_density(v) for v in x])
    assert mass(c) == pytest.approx(1, abs=1e-10)


def test_quartic_closed_form():
    for t in (-0.5, -1.0, -0.3):
        c = solve_one_cut(quartic_potential(t))
        assert c.gamma ** 2 == pytest.approx(quartic_one_cut_gamma2(t), abs=1e-12)
        assert c.gamma ** 2 == pytest.approx((1 + math.sqrt(1 - 12 * t)) / 6, abs=1e-12)
        assert mass(c) == pytest.approx(1, abs=1e-8)
        assert c.rh_residual() < 1e-10


def test_formal_gamma2():
    g2 = gamma_squared_series(3)
    assert [g2[k] for k in range(4)] == [1, 3, 18, 135]
    t = FormalScalar.coupling(3)
    assert g2 == 1 + 3 * t * g2 * g2
    curve = solve_one_cut(formal_quartic(3), 3)
    assert curve.gamma * curve.gamma == g2
    assert curve.rh_residual() == 0


@pytest.mark.parametrize("seed", range(5))
def test_random_convex_mass(seed):
    rng = np.random.default_rng(seed)
    t2, t4 = rng.uniform(0.5, 2.0), rng.uniform(0.1, 1.5)
    terms = {2: t2, 4: t4}
    if seed % 2:
        terms[6] = rng.uniform(0.1, 1.0)
    else:
        terms[1] = rng.uniform(-0.3, 0.3)
    c = solve_one_cut(Potential.from_terms(terms))
    assert mass(c) == pytest.approx(1, abs=1e-8)
    assert c.rh_residual() < 1e-10


def test_tricomi():
    V = Potential.gaussian()
    assert tricomi_resolvent(V, (-2, 2), 3.0).real == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-10)
    assert tricomi_resolvent(V, (-2, 2), 1e4).real * 1e4 == pytest.approx(1, abs=1e-6)
    Vq = Potential.from_terms({1: 0.2, 2: 1.0, 3: 0.1, 4: 0.3})
    c = solve_one_cut(Vq)
    b, a = c.edges[1], c.edges[0]
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = complex(rng.uniform(-4, 4), rng.uniform(0.2, 2))
        assert abs(tricomi_resolvent(Vq, (b, a), x) - c.resolvent(x)) < 1e-8
    with pytest.raises(ValueError):
        tricomi_resolvent(V, (-2, 2), 0.5)


def test_two_point():
    c = solve_one_cut(quartic_potential(-0.7))
    x1, x2 = 3.1 + 0.2j, -2.7 + 0.5j
    assert two_point_one_cut(c, x1, x2) == pytest.approx(two_point_one_cut(c, x2, x1))
    assert two_point_one_cut(c, x1, x2) == pytest.approx(two_point_q2(c, x1, x2))
    near = [two_point_one_cut(c, 3.0, 3.0 + h) for h in (1e-3, 1e-4)]
    assert abs(near[0] - near[1]) < 1e-3


def test_gaussian_q2():
    c = solve_one_cut(Potential.gaussian())
    x1, x2 = 2.5, -3.5
    s = lambda x: math.sqrt(x * x - 4) * (1 if x > 0 else -1)
    Q2 = x1 * x2 - 4
    expected = (Q2 / (s(x1) * s(x2)) - 1) / (2 * (x1 - x2) ** 2)
    assert two_point_one_cut(c, x1, x2) == pytest.approx(expected)


def test_transition():
    below = solve_one_cut(quartic_potential(-0.25 - 1e-3))
    assert below.density(np.linspace(-below.edges[0], below.edges[0], 201)[1:-1]).min() >= 0
    with pytest.raises(NegativeDensityError):
        solve_one_cut(quartic_potential(-0.25 + 1e-3))
    two = quartic_two_cut(-0.25 + 1e-3)
    assert two.b ** 2 < 0.07
    assert two.mass() == pytest.approx(1, abs=1e-8)


def test_two_cut():
    tc = quartic_two_cut(-0.125)
    assert tc.a ** 2 == pytest.approx(1 + 2 * math.sqrt(0.125))
    assert tc.b ** 2 == pytest.approx(1 - 2 * math.sqrt(0.125))
    x = np.linspace(tc.b, tc.a, 52)[1:-1]
    assert np.all(tc.density(x) > 0) and np.all(tc.density(-x) > 0)
    assert tc.mass() == pytest.approx(1, abs=1e-8)
    X = 1e3
    assert (tc.resolvent(X) * X).real == pytest.approx(1, abs=1e-5)
    with pytest.raises(ValueError):
        quartic_two_cut(0.1)
