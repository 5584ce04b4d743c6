"""Monte Carlo Gaussian beta-ensembles and Wishart matrices.

Each draw has its own Philox stream keyed by ``(seed, draw)``, so pooled
statistics do not depend on how draws are scheduled.  Normal variates come
from the Box-Muller transform.  All spectra go through one real-symmetric
eigensolver: complex Hermitian matrices are embedded as ``[[X, -Y], [Y, X]]``
and quaternion self-dual ones through their complex 2N x 2N form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import _kernels
from .model import EnsembleSpec

__all__ = [
    "SampledSpectrum",
    "SpacingSample",
    "draw_stream",
    "box_muller",
    "sample_gaussian",
    "sample_many",
    "sample_wishart",
    "eigenvalues_symmetric",
    "semicircle_cdf",
    "unfold_spacings",
    "wigner_surmise",
    "histogram",
    "l1_distance",
]


@dataclass(frozen=True)
class SampledSpectrum:
    eigenvalues: np.ndarray
    ensemble: EnsembleSpec | None
    seed: int
    draw: int = 0


@dataclass(frozen=True)
class SpacingSample:
    spacings: np.ndarray
    method: str
    bulk_fraction: float


def draw_stream(seed: int, draw: int) -> np.random.Generator:
    """Counter-based generator for one draw; the key is ``(seed, draw)``."""
    if seed < 0 or draw < 0:
        raise ValueError("seed and draw index must be nonnegative")
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, draw & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def box_muller(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` standard normal variates."""
    m = (n + 1) // 2
    u1 = 1.0 - rng.random(m)  # (0, 1]
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.concatenate([r * np.cos(2 * np.pi * u2), r * np.sin(2 * np.pi * u2)])
    return z[:n]


# ------------------------------------------------------------- eigensolver
def eigenvalues_symmetric(matrix) -> np.ndarray:
    """Sorted eigenvalues of a real symmetric matrix (Householder + implicit QL)."""
    a = np.array(matrix, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    scale = np.max(np.abs(a)) if a.size else 0.0
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if np.max(np.abs(a - a.T), initial=0.0) > 1e-12 * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric")
    if a.shape[0] == 0:
        return np.zeros(0)
    d, e = _kernels.tridiagonalize(np.ascontiguousarray(a))
    return _kernels.tql_eigenvalues(d, e)


def _embed_complex(X, Y):
    return np.block([[X, -Y], [Y, X]])


# ---------------------------------------------------------------- Gaussian
def _gaussian_matrix(spec: EnsembleSpec, rng):
    """Real-symmetric embedding of one draw with weight ``exp(-(N beta/4) Tr M^2)``."""
    N = spec.N
    iu = np.triu_indices(N, 1)
    if spec.beta == 1:
        M = np.zeros((N, N))
        M[iu] = box_muller(rng, len(iu[0])) / math.sqrt(N)
        M = M + M.T
        M[np.diag_indices(N)] = box_muller(rng, N) * math.sqrt(2.0 / N)
        return M, 1
    if spec.beta == 2:
        X = np.zeros((N, N))
        Y = np.zeros((N, N))
        s = math.sqrt(1.0 / (2 * N))
        X[iu] = box_muller(rng, len(iu[0])) * s
        Y[iu] = box_muller(rng, len(iu[0])) * s
        X = X + X.T
        Y = Y - Y.T
        X[np.diag_indices(N)] = box_muller(rng, N) / math.sqrt(N)
        return _embed_complex(X, Y), 2
    # beta = 4: quaternion entries q = a0 + a1 i + a2 j + a3 k, E|q|^2 = 1/N
    s = math.sqrt(1.0 / (4 * N))
    A = np.zeros((N, N), dtype=complex)  # a0 + i a1
    B = np.zeros((N, N), dtype=complex)  # a2 + i a3
    comps = [box_muller(rng, len(iu[0])) * s for _ in range(4)]
    A[iu] = comps[0] + 1j * comps[1]
    B[iu] = comps[2] + 1j * comps[3]
    A = A + A.conj().T
    B = B - B.T
    A[np.diag_indices(N)] = box_muller(rng, N) * math.sqrt(1.0 / (2 * N))
    H = np.block([[A, B], [-B.conj(), A.conj()]])
    return _embed_complex(H.real, H.imag), 4


def sample_gaussian(spec: EnsembleSpec, seed: int, draw: int = 0) -> SampledSpectrum:
    """One spectrum from the Gaussian ensemble ``exp(-(N beta/4) Tr M^2)``."""
    rng = draw_stream(seed, draw)
    M, mult = _gaussian_matrix(spec, rng)
    ev = eigenvalues_symmetric(M)[::mult].copy()
    return SampledSpectrum(ev, spec, seed, draw)


def sample_many(spec: EnsembleSpec, draws: int, seed: int, start: int = 0):
    """Spectra for draw indices ``start .. start + draws - 1``."""
    return [sample_gaussian(spec, seed, d) for d in range(start, start + draws)]


def sample_wishart(p: int, N: int, sigma2: float, seed: int, draw: int = 0) -> SampledSpectrum:
    """Nonzero eigenvalues of ``X X^T / N`` for ``X`` of shape ``N x p``, entries ``N(0, sigma2)``.

    The smaller Gram matrix is diagonalized, giving ``min(N, p)`` values; the
    bulk follows the Marchenko-Pastur law with ``u = p/N``.
    """
    if p < 1 or N < 1:
        raise ValueError("p and N must be positive")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    rng = draw_stream(seed, draw)
    X = box_muller(rng, N * p).reshape(N, p) * math.sqrt(sigma2)
    G = X @ X.T if N <= p else X.T @ X
    G = 0.5 * (G + G.T)
    return SampledSpectrum(eigenvalues_symmetric(G / N), None, seed, draw)


# ------------------------------------------------------------- statistics
def semicircle_cdf(x):
    """``int_{-2}^x sqrt(4 - t^2)/(2 pi) dt``."""
    x = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    return 0.5 + x * np.sqrt(4 - x * x) / (4 * np.pi) + np.arcsin(x / 2) / np.pi


def unfold_spacings(eigenvalues, bulk_fraction: float = 0.5, method: str = "semicircle") -> SpacingSample:
    """Spacings of unfolded eigenvalues restricted to the central ``bulk_fraction`` of indices.

    ``method="semicircle"`` maps ``lambda -> N F(lambda)`` with the integrated
    semicircle; ``method="none"`` assumes unit density already.
    """
    ev = np.sort(np.asarray(eigenvalues, dtype=float))
    N = ev.size
    if method == "semicircle":
        xi = N * semicircle_cdf(ev)
    elif method == "none":
        xi = ev
    else:
        raise ValueError(f"unknown unfolding method {method!r}")
    if not 0 < bulk_fraction <= 1:
        raise ValueError("bulk fraction must be in (0, 1]")
    drop = int(round(N * (1 - bulk_fraction) / 2))
    kept = xi[drop: N - drop]
    if kept.size < 3:
        raise ValueError("fewer than 3 eigenvalues retained")
    return SpacingSample(np.diff(kept), method, bulk_fraction)


def wigner_surmise(beta: int, s):
    """``C s^beta exp(-a s^2)`` with ``int P = int s P = 1``."""
    if beta not in (1, 2, 4):
        raise ValueError("beta must be 1, 2 or 4")
    g1 = special.gamma((beta + 2) / 2)
    g0 = special.gamma((beta + 1) / 2)
    a = (g1 / g0) ** 2
    C = 2 * g1 ** (beta + 1) / g0 ** (beta + 2)
    s = np.asarray(s, dtype=float)
    return C * s**beta * np.exp(-a * s * s)


def histogram(values, bins: int, range_):
    """Bin centres and densities normalized by the total count."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("empty input")
    if bins < 1:
        raise ValueError("need at least one bin")
    counts, edges = np.histogram(v, bins=bins, range=range_)
    width = edges[1] - edges[0]
    return 0.5 * (edges[1:] + edges[:-1]), counts / (v.size * width)


def l1_distance(centers, density, reference) -> float:
    """``sum |h - rho| dx`` of a histogram against a reference density."""
    centers = np.asarray(centers)
    dx = centers[1] - centers[0] if centers.size > 1 else 1.0
    return float(np.sum(np.abs(np.asarray(density) - reference(centers))) * dx)
