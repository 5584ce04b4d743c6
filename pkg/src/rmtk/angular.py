"""Angular integrals over U(N) with normalized Haar measure.

``Z(X, Y) = int dU exp(-Tr U X U^-1 Y)`` for real diagonal ``X, Y``.  The
determinant formula carries the sign ``(-1)^(N(N-1)/2)`` from the coupling
``-1`` in the exponent; it was calibrated against Haar Monte Carlo at N = 2, 3.

Quadratic moments are indexed so that entry ``(i, j)`` pairs ``X_i`` with
``Y_j``; under the weight above this is ``<|U_{j,i}|^2>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .sampling import box_muller, draw_stream

__all__ = [
    "AngularProblem",
    "HC_SIGN",
    "hc_integral",
    "morozov_moments",
    "moment_generating_function",
    "double_residue_moment",
    "haar_sample",
    "haar_batch",
    "mc_angular",
]


def HC_SIGN(N: int) -> int:
    """Sign relating the determinant formula to the ``exp(-Tr ...)`` convention."""
    return -1 if (N * (N - 1) // 2) % 2 else 1


@dataclass(frozen=True)
class AngularProblem:
    X: tuple
    Y: tuple

    def __post_init__(self):
        X = tuple(float(v) for v in self.X)
        Y = tuple(float(v) for v in self.Y)
        if len(X) != len(Y) or not X:
            raise ValueError("X and Y must be nonempty and of equal length")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def N(self) -> int:
        return len(self.X)

    def check_distinct(self):
        for name, v in (("X", self.X), ("Y", self.Y)):
            if len(set(v)) != len(v):
                raise ValueError(f"entries of {name} must be pairwise distinct")


def _vandermonde(v):
    v = np.asarray(v)
    out = 1.0
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out *= v[j] - v[i]
    return out


def _scaled_exp_det(X, Y):
    """``(log scale, det of the row-scaled matrix)`` for ``det exp(-X_i Y_j)``."""
    expo = -np.outer(X, Y)
    shift = expo.max(axis=1)
    det = np.linalg.det(np.exp(expo - shift[:, None]))
    return float(shift.sum()), float(det)


def hc_integral(problem: AngularProblem) -> float:
    """``sign * prod_{j<N} j! * det(exp(-X_i Y_j)) / (Delta(X) Delta(Y))``."""
    problem.check_distinct()
    X, Y = np.array(problem.X), np.array(problem.Y)
    N = problem.N
    log_scale, det = _scaled_exp_det(X, Y)
    c = math.prod(math.factorial(j) for j in range(1, N))
    return HC_SIGN(N) * c * det * math.exp(log_scale) / (_vandermonde(X) * _vandermonde(Y))


def morozov_moments(problem: AngularProblem) -> np.ndarray:
    """Matrix of quadratic moments, entry ``(i, j)`` pairing ``X_i`` with ``Y_j``.

    Each entry is the double residue at ``x = X_i, y = Y_j`` of the
    generating function ``det(E + (x-X)^-1 E (y-Y)^-1) / det E``: in
    ``E + a E b`` with ``a_k = 1/(X_i - X_k)``, ``b_l = 1/(Y_j - Y_l)`` the
    singular row ``i`` and column ``j`` are replaced by their pole
    coefficients.
    """
    problem.check_distinct()
    X, Y = np.array(problem.X), np.array(problem.Y)
    N = problem.N
    if N == 1:
        return np.ones((1, 1))
    expo = -np.outer(X, Y)
    E = np.exp(expo - expo.max(axis=1)[:, None])  # row scaling cancels in the ratio
    cond = np.linalg.cond(E)
    if not np.isfinite(cond) or cond > 1e4:
        # nearly coincident data: the bordered determinants cancel, work in extended precision
        dps = 30 + 2 * int(np.log10(cond)) if np.isfinite(cond) else 80
        with mpmath.workdps(dps):
            return _morozov_mp(problem.X, problem.Y)
    return _bordered(E, X, Y, np.linalg.det, np.zeros)


def _bordered(E, X, Y, det, zeros):
    N = len(X)
    detE = det(E)
    out = np.empty((N, N))
    for i in range(N):
        a = zeros(N)
        for k in range(N):
            if k != i:
                a[k] = 1 / (X[i] - X[k])
        for j in range(N):
            b = zeros(N)
            for k in range(N):
                if k != j:
                    b[k] = 1 / (Y[j] - Y[k])
            B = E.copy()
            for r in range(N):
                for c in range(N):
                    if r == i and c == j:
                        continue
                    if r == i:
                        B[r, c] = E[r, c] * b[c]
                    elif c == j:
                        B[r, c] = E[r, c] * a[r]
                    else:
                        B[r, c] = E[r, c] * (1 + a[r] * b[c])
            out[i, j] = float(det(B) / detE)
    return out


def _morozov_mp(X, Y):
    X = [mpmath.mpf(v) for v in X]
    Y = [mpmath.mpf(v) for v in Y]
    N = len(X)
    E = mpmath.matrix(N, N)
    for r in range(N):
        for c in range(N):
            E[r, c] = mpmath.exp(-X[r] * Y[c])
    return _bordered(E, X, Y, mpmath.det, lambda n: [mpmath.mpf(0)] * n)


def moment_generating_function(problem: AngularProblem, x, y) -> complex:
    """``<Tr U (x-X)^-1 U^-1 (y-Y)^-1> = det(E_ij (1 + 1/((x-X_i)(y-Y_j)))) / det E - 1``."""
    X, Y = np.array(problem.X), np.array(problem.Y)
    expo = -np.outer(X, Y)
    E = np.exp(expo - expo.max(axis=1)[:, None])
    A = E * (1 + 1 / np.outer(x - X, y - Y))
    return complex(np.linalg.det(A) / np.linalg.det(E) - 1)


def double_residue_moment(problem: AngularProblem, i: int, j: int, radius=None, points: int = 64) -> float:
    """Double residue of the generating function by trapezoid rules on two circles."""
    X, Y = np.array(problem.X), np.array(problem.Y)
    if radius is None:
        gaps = [abs(X[i] - v) for k, v in enumerate(X) if k != i] + [abs(Y[j] - v) for k, v in enumerate(Y) if k != j]
        radius = 0.4 * min(gaps) if gaps else 0.5
    th = 2 * np.pi * np.arange(points) / points
    ph = radius * np.exp(1j * th)
    total = 0j
    for p in ph:
        for q in ph:
            total += moment_generating_function(problem, X[i] + p, Y[j] + q) * p * q
    return float((total / points**2).real)


def haar_sample(N: int, seed: int, draw: int = 0) -> np.ndarray:
    """Haar unitary from the QR decomposition of a complex Ginibre matrix with phase correction."""
    if N < 1:
        raise ValueError("N must be positive")
    rng = draw_stream(seed, draw)
    z = box_muller(rng, 2 * N * N).reshape(2, N, N)
    G = (z[0] + 1j * z[1]) / math.sqrt(2)
    Q, R = np.linalg.qr(G)
    d = np.diag(R)
    return Q * (d.conj() / np.abs(d))[None, :]


def haar_batch(N: int, count: int, seed: int, draw: int = 0) -> np.ndarray:
    """``count`` Haar unitaries from one stream, shape ``(count, N, N)``."""
    rng = draw_stream(seed, draw)
    z = box_muller(rng, 2 * count * N * N).reshape(2, count, N, N)
    G = (z[0] + 1j * z[1]) / math.sqrt(2)
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R, axis1=1, axis2=2)
    return Q * (d.conj() / np.abs(d))[:, None, :]


MC_CHUNK = 4096


def mc_angular(problem: AngularProblem, samples: int, seed: int, moments: bool = False):
    """Haar Monte Carlo estimate of ``Z`` with its jackknife standard error.

    With ``moments=True`` also returns the weighted moment matrix in the
    same orientation as :func:`morozov_moments` and its standard errors.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    X, Y = np.array(problem.X), np.array(problem.Y)
    N = problem.N
    f = np.empty(samples)
    sq = np.empty((samples, N, N)) if moments else None
    for chunk, lo in enumerate(range(0, samples, MC_CHUNK)):
        hi = min(samples, lo + MC_CHUNK)
        P = np.abs(haar_batch(N, hi - lo, seed, chunk)) ** 2  # P[s, a, b] = |U_ab|^2
        # Tr U X U^-1 Y = sum_ab |U_ab|^2 Y_a X_b
        f[lo:hi] = np.exp(-np.einsum("a,sab,b->s", Y, P, X))
        if moments:
            sq[lo:hi] = np.transpose(P, (0, 2, 1))
    est = float(f.mean())
    # jackknife (equal to the usual standard error of the mean for a plain average)
    loo = (f.sum() - f) / (samples - 1)
    se = math.sqrt((samples - 1) / samples * np.sum((loo - loo.mean()) ** 2))
    if not moments:
        return est, se
    tot = f.sum()
    num = np.tensordot(f, sq, axes=1)
    M = num / tot
    # jackknife for the ratio estimator
    loo_M = (num[None] - f[:, None, None] * sq) / (tot - f)[:, None, None]
    M_se = np.sqrt((samples - 1) / samples * np.sum((loo_M - loo_M.mean(axis=0)) ** 2, axis=0))
    return est, se, M, M_se
