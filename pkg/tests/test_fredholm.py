import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import dblquad, quad, simpson, trapezoid

from rmtk.fredholm import (
    KernelSpec,
    airy,
    airy_kernel,
    airy_prime,
    finite_n_gap,
    fredholm_det,
    largest_eigenvalue_density,
    sine_gap,
    sine_kernel,
    spacing_cdf,
    spacing_distribution,
    tracy_widom_beta2,
)
from rmtk.model import Potential
from rmtk.ortho import cd_kernel, joint_density, recurrence_for
from rmtk.sampling import wigner_surmise


def test_zero_kernel():
    assert fredholm_det(KernelSpec(lambda x, y: 0 * x * y, 0, 1, 8)) == 1


def test_rank_one():
    f = lambda x: np.exp(x)
    g = lambda y: np.cos(y)
    det = fredholm_det(KernelSpec(lambda x, y: f(x) * g(y), 0.0, 1.0, 32))
    exact = 1 - quad(lambda t: math.exp(t) * math.cos(t), 0, 1)[0]
    assert abs(det - exact) < 1e-12


def test_non_finite_kernel():
    with pytest.raises(ValueError):
        with np.errstate(divide="ignore", invalid="ignore"):
            fredholm_det(KernelSpec(lambda x, y: 1 / (x - y), 0, 1, 4))


def test_sine_small_s():
    for s in (1e-2, 2e-2):
        assert abs(sine_gap(s) - (1 - s)) < 10 * s**4


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0, 3.0, 4.0])
def test_sine_convergence(s):
    assert abs(sine_gap(s, 64) - sine_gap(s, 128)) < 1e-8


def test_gap_bounds_monotone():
    E = [sine_gap(s) for s in np.linspace(0, 4, 21)]
    assert E[0] == 1
    assert all(0 <= e <= 1 for e in E)
    assert all(a >= b - 1e-14 for a, b in zip(E, E[1:]))


def test_kernel_symmetry():
    rng = np.random.default_rng(0)
    x, y = rng.uniform(-3, 3, (2, 10))
    assert np.allclose(sine_kernel(x, y), sine_kernel(y, x))
    assert np.allclose(airy_kernel(x, y), airy_kernel(y, x))
    assert np.allclose(sine_kernel(x, x), 1)


def test_spacing_distribution():
    g = spacing_distribution(np.linspace(0, 3, 61))
    assert abs(g.P[0]) < 1e-4
    assert np.max(np.abs(g.P - wigner_surmise(2, g.s))) < 0.02
    wide = spacing_distribution(np.linspace(0, 6, 241))
    assert trapezoid(wide.P, wide.s) == pytest.approx(1, abs=1e-4)
    assert trapezoid(wide.s * wide.P, wide.s) == pytest.approx(1, abs=1e-3)
    with pytest.raises(ValueError):
        spacing_distribution([-0.1, 0.2])
    coarse = spacing_distribution(np.linspace(0, 3, 7))
    assert np.allclose(coarse.P, g.P[::10], atol=1e-8)


def test_spacing_cdf():
    s = np.array([0.5, 1.0, 2.0])
    g = spacing_distribution(np.linspace(0, 2, 201))
    idx = [int(round(v / 0.01)) + 1 for v in s]
    cum = np.array([simpson(g.P[:k], x=g.s[:k]) for k in idx])
    assert np.allclose(spacing_cdf(s), cum, atol=2e-7)


def test_airy_values():
    assert airy(0.0) == pytest.approx(3 ** (-2 / 3) / math.gamma(2 / 3), abs=1e-14)
    for x in (-20.0, -7.5, -1.0, 2.0, 9.0, 25.0):
        assert abs(airy(x) - float(mpmath.airyai(x))) < 1e-12
        assert abs(airy_prime(x) - float(mpmath.airyai(x, derivative=1))) < 1e-12
    with pytest.raises(ValueError):
        airy(31.0)


def test_airy_ode():
    x = np.linspace(-10, 10, 201)
    h = 1e-4
    d2 = (airy_prime(x + h) - airy_prime(x - h)) / (2 * h)
    assert np.max(np.abs(d2 - x * airy(x))) < 1e-7 * max(1, np.max(np.abs(x)))


def test_airy_decay():
    x = np.linspace(1, 30, 300)
    v = airy(x)
    assert np.all(np.diff(v) < 0) and np.all(v > 0)


def test_tracy_widom():
    assert tracy_widom_beta2(-2.0, check=True) == pytest.approx(0.413224142505, abs=1e-9)
    assert 1 - tracy_widom_beta2(10.0) < 1e-12
    grid = np.linspace(-6, 4, 41)
    F = tracy_widom_beta2(grid)
    assert np.all(np.diff(F) >= -1e-14)
    with pytest.raises(ValueError):
        tracy_widom_beta2(-11.0)


@pytest.fixture(scope="module")
def gauss():
    return recurrence_for(Potential.gaussian(), 8)


def test_finite_gap_limits(gauss):
    assert finite_n_gap(gauss, 2, (1.0, 1.0)) == 1
    assert finite_n_gap(gauss, 2, (-math.inf, math.inf)) < 1e-8


def test_inclusion_exclusion(gauss):
    N, a = 2, 0.3
    E = finite_n_gap(gauss, N, (a, math.inf))
    r1 = quad(lambda x: joint_density(gauss, N, 1, [x]), a, 12)[0]
    r2 = dblquad(lambda y, x: joint_density(gauss, N, 2, [x, y]), a, 12, a, 12, epsabs=1e-11)[0]
    assert abs(E - (1 - N * r1 + N * (N - 1) / 2 * r2)) < 1e-8


def test_largest_density(gauss):
    N = 2
    a = np.linspace(-4, 6, 401)
    p = largest_eigenvalue_density(gauss, N, a)
    # central differences of a determinant accurate to ~1e-11 with h = 1e-4
    assert np.all(p > -1e-6)
    assert trapezoid(p, a) == pytest.approx(1, abs=1e-5)


def test_largest_density_mc(gauss):
    # lambda_max of 2x2 GUE with weight exp(-Tr M^2 / 2)
    rng = np.random.default_rng(2)
    n = 40000
    d = rng.standard_normal((n, 2))
    off = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2)
    lam = 0.5 * (d[:, 0] + d[:, 1]) + np.sqrt(0.25 * (d[:, 0] - d[:, 1]) ** 2 + np.abs(off) ** 2)
    edges = np.linspace(-1.5, 3.5, 11)
    counts, _ = np.histogram(lam, edges)
    for lo, hi, c in zip(edges[:-1], edges[1:], counts):
        prob = quad(lambda v: largest_eigenvalue_density(gauss, 2, v), lo, hi)[0]
        sigma = math.sqrt(n * prob * (1 - prob))
        assert abs(c - n * prob) < 3 * sigma + 1
