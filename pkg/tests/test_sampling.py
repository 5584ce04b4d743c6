import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from rmtk.model import EnsembleSpec, Potential
from rmtk.ortho import recurrence_for, trace_moment
from rmtk.saddle import marchenko_pastur_density, semicircle_density
from rmtk.sampling import (
    box_muller,
    draw_stream,
    eigenvalues_symmetric,
    histogram,
    l1_distance,
    sample_gaussian,
    sample_many,
    sample_wishart,
    semicircle_cdf,
    unfold_spacings,
    wigner_surmise,
)


def test_eigensolver_small():
    assert np.allclose(eigenvalues_symmetric(np.eye(2)), [1, 1])
    assert np.allclose(eigenvalues_symmetric([[0, 1], [1, 0]]), [-1, 1])
    assert eigenvalues_symmetric(np.zeros((0, 0))).size == 0


def test_eigensolver_errors():
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues_symmetric([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        eigenvalues_symmetric([[np.nan, 0], [0, 1]])


def test_eigensolver_leaves_input():
    a = np.array([[2.0, 1.0], [1.0, 3.0]])
    b = a.copy()
    eigenvalues_symmetric(a)
    assert np.array_equal(a, b)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 200), st.integers(0, 2**32))
def test_eigensolver_trace_frobenius(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    a = a + a.T
    ev = eigenvalues_symmetric(a)
    assert np.all(np.diff(ev) >= 0)
    scale = np.sum(np.abs(np.diag(a))) + 1
    assert abs(ev.sum() - np.trace(a)) < 1e-10 * scale
    fro = np.sum(a * a)
    assert abs(np.sum(ev**2) - fro) < 1e-10 * fro


def test_eigensolver_vs_lapack():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((60, 60))
    a = a + a.T
    assert np.allclose(eigenvalues_symmetric(a), np.linalg.eigvalsh(a), atol=1e-10)


def test_box_muller_moments():
    z = box_muller(draw_stream(1, 0), 200001)
    assert z.size == 200001
    assert abs(z.mean()) < 0.01
    assert abs(z.var() - 1) < 0.01


def test_streams_independent_of_order():
    spec = EnsembleSpec(2, 10)
    a = sample_many(spec, 4, seed=11)
    b = [sample_gaussian(spec, 11, d) for d in (3, 1, 0, 2)]
    assert all(np.array_equal(a[d].eigenvalues, s.eigenvalues) for d, s in zip((3, 1, 0, 2), b))
    assert not np.array_equal(a[0].eigenvalues, a[1].eigenvalues)


def test_negative_seed():
    with pytest.raises(ValueError):
        draw_stream(-1, 0)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_spectrum_shape(beta):
    s = sample_gaussian(EnsembleSpec(beta, 7), 5)
    assert s.eigenvalues.shape == (7,)
    assert np.all(np.isfinite(s.eigenvalues))
    assert np.all(np.diff(s.eigenvalues) >= 0)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_scalar_variance(beta):
    # N = 1: weight exp(-beta x^2 / 4), variance 2 / beta
    x = np.array([sample_gaussian(EnsembleSpec(beta, 1), 9, d).eigenvalues[0] for d in range(4000)])
    var = 2 / beta
    se = var * math.sqrt(2 / x.size)
    assert abs(x.var() - var) < 4 * se


def test_kramers_pairs():
    from rmtk.sampling import _gaussian_matrix

    M, mult = _gaussian_matrix(EnsembleSpec(4, 5), draw_stream(2, 0))
    ev = eigenvalues_symmetric(M)
    assert mult == 4
    assert np.allclose(ev[0::4], ev[3::4], atol=1e-10)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_semicircle(beta):
    N = 200
    ev = np.concatenate([s.eigenvalues for s in sample_many(EnsembleSpec(beta, N), 10, 4)])
    c, h = histogram(ev, 40, (-2.2, 2.2))
    assert l1_distance(c, h, semicircle_density) < 0.08


def test_odd_moments_vanish():
    N = 20
    ev = np.array([s.eigenvalues for s in sample_many(EnsembleSpec(2, N), 400, 8)])
    for k in (1, 3):
        tr = np.sum(ev**k, axis=1)
        assert abs(tr.mean()) < 3 * tr.std() / math.sqrt(tr.size)


def test_trace_square_vs_ortho():
    N = 6
    ev = np.array([s.eigenvalues for s in sample_many(EnsembleSpec(2, N), 3000, 21)])
    tr = np.sum(ev**2, axis=1)
    # scale lambda -> sqrt(N) lambda maps the weight onto exp(-Tr M^2 / 2)
    exact = float(trace_moment(recurrence_for(Potential.gaussian(), N + 2), N, 2)) / N
    assert abs(tr.mean() - exact) < 3 * tr.std() / math.sqrt(tr.size)


def test_wishart_scalar():
    x = np.array([sample_wishart(1, 50, 2.0, 3, d).eigenvalues[0] for d in range(2000)])
    assert abs(x.mean() - 2.0) < 3 * x.std() / math.sqrt(x.size)


def test_wishart_mp_u1():
    ev = np.concatenate([sample_wishart(300, 300, 1.0, 6, d).eigenvalues for d in range(10)])
    c, h = histogram(ev, 40, (0, 4))
    # bin averages of the density: it is singular like x^(-1/2) at the origin
    ref = np.array([quad(lambda x: marchenko_pastur_density(x, 1.0), v - 0.05, v + 0.05)[0] / 0.1 for v in c])
    assert np.sum(np.abs(h - ref)) * 0.1 < 0.05


def test_wishart_errors():
    with pytest.raises(ValueError):
        sample_wishart(0, 3, 1.0, 0)
    with pytest.raises(ValueError):
        sample_wishart(2, 3, 0.0, 0)


def test_unfold_equally_spaced():
    sp = unfold_spacings(np.arange(20.0), 0.5, method="none")
    assert np.allclose(sp.spacings, 1)
    with pytest.raises(ValueError):
        unfold_spacings([0.0, 1.0], 1.0, method="none")
    with pytest.raises(ValueError):
        unfold_spacings(np.arange(10.0), 0.5, method="poly")


def test_unfold_mean():
    sp = np.concatenate([unfold_spacings(s.eigenvalues).spacings for s in sample_many(EnsembleSpec(2, 200), 100, 13)])
    assert np.all(sp >= 0)
    assert abs(sp.mean() - 1) < 0.02


def test_semicircle_cdf():
    assert semicircle_cdf(-3) == 0 and semicircle_cdf(3) == 1
    assert semicircle_cdf(0.0) == pytest.approx(0.5)
    assert semicircle_cdf(1.0) == pytest.approx(quad(semicircle_density, -2, 1)[0], abs=1e-12)


def test_surmise_closed_forms():
    s = np.linspace(0, 3, 31)
    assert np.allclose(wigner_surmise(1, s), np.pi / 2 * s * np.exp(-np.pi * s**2 / 4))
    assert np.allclose(wigner_surmise(2, s), 32 / np.pi**2 * s**2 * np.exp(-4 * s**2 / np.pi))
    with pytest.raises(ValueError):
        wigner_surmise(3, 1.0)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_surmise_normalization(beta):
    f = lambda s: float(wigner_surmise(beta, s))
    assert abs(quad(f, 0, np.inf, epsabs=1e-13)[0] - 1) < 1e-10
    assert abs(quad(lambda s: s * f(s), 0, np.inf, epsabs=1e-13)[0] - 1) < 1e-10


def test_histogram():
    c, h = histogram([0.5], 1, (0, 2))
    assert h[0] == pytest.approx(0.5)
    c, h = histogram(np.arange(100) + 0.5, 10, (0, 100))
    assert np.allclose(h, 0.01)
    with pytest.raises(ValueError):
        histogram([], 3, (0, 1))
    with pytest.raises(ValueError):
        histogram([1.0], 0, (0, 1))
