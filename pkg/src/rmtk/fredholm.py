"""Fredholm determinants ``det(Id - K_I)`` by Gauss-Legendre Nystrom discretization.

Bulk spacings use the unit-density sine kernel ``sin(pi(x-y))/(pi(x-y))`` on
``[0, s]``.  Semi-infinite intervals are mapped to ``u in [0, 1)`` through
``x = a + scale * log(1/(1-u))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .ortho import RecurrenceTable, cd_kernel

__all__ = [
    "KernelSpec",
    "GapCurve",
    "nodes_weights",
    "fredholm_det",
    "sine_kernel",
    "sine_gap",
    "spacing_distribution",
    "spacing_cdf",
    "airy",
    "airy_prime",
    "airy_kernel",
    "tracy_widom_beta2",
    "finite_n_gap",
    "largest_eigenvalue_density",
]

AIRY_RANGE = 30.0


@dataclass(frozen=True)
class KernelSpec:
    """A kernel restricted to ``[a, b]`` with ``m`` quadrature nodes.

    ``b`` (or ``a``) may be infinite; ``scale`` sets the exponential map.
    """

    kernel: object
    a: float
    b: float
    m: int = 64
    scale: float = 1.0
    tag: str = "user"


@dataclass
class GapCurve:
    """Gap probabilities ``E(s)`` on a grid and, optionally, ``P = E''``."""

    s: np.ndarray
    E: np.ndarray
    P: np.ndarray | None = None


def nodes_weights(a, b, m, scale=1.0):
    """Quadrature nodes and weights for ``[a, b]`` (either end may be infinite)."""
    if m < 2:
        raise ValueError("need at least 2 nodes")
    u, w = np.polynomial.legendre.leggauss(m)
    if math.isinf(a) and math.isinf(b):
        x1, w1 = nodes_weights(0.0, math.inf, m, scale)
        return np.concatenate([-x1[::-1], x1]), np.concatenate([w1[::-1], w1])
    if math.isinf(a):
        x1, w1 = nodes_weights(-b, math.inf, m, scale)
        return -x1[::-1], w1[::-1]
    if math.isinf(b):
        u = 0.5 * (u + 1)
        w = 0.5 * w
        x = a + scale * np.log(1.0 / (1.0 - u))
        return x, w * scale / (1.0 - u)
    if b <= a:
        return np.zeros(0), np.zeros(0)
    return 0.5 * (b - a) * u + 0.5 * (b + a), 0.5 * (b - a) * w


def fredholm_det(spec: KernelSpec) -> float:
    """``det(delta_ij - sqrt(w_i w_j) K(x_i, x_j))``."""
    x, w = nodes_weights(spec.a, spec.b, spec.m, spec.scale)
    if x.size == 0:
        return 1.0
    K = spec.kernel(x[:, None], x[None, :])
    if not np.all(np.isfinite(K)):
        raise ValueError("kernel is not finite at the quadrature nodes")
    r = np.sqrt(w)
    A = np.eye(x.size) - r[:, None] * K * r[None, :]
    return float(np.linalg.det(A))


# ------------------------------------------------------------------ bulk
def sine_kernel(x, y):
    """Unit-density sine kernel; ``K(x, x) = 1``."""
    return np.sinc(np.asarray(x) - np.asarray(y))


def sine_gap(s: float, m: int = 64) -> float:
    """Probability of no eigenvalue in an interval of length ``s`` (unit density)."""
    if s < 0:
        raise ValueError("interval length must be nonnegative")
    return fredholm_det(KernelSpec(sine_kernel, 0.0, float(s), m, tag="sine"))


def _sine_det_signed(s: float, m: int) -> float:
    """Analytic continuation of ``sine_gap`` to signed lengths (nodes ``x = s u``)."""
    u, w = np.polynomial.legendre.leggauss(m)
    u, w = 0.5 * (u + 1), 0.5 * w
    K = np.sinc(s * (u[:, None] - u[None, :]))
    return float(np.linalg.det(np.eye(m) - s * K * w[None, :]))


def spacing_distribution(s_grid, m: int = 64, h: float = 0.02) -> GapCurve:
    """``E(s)`` and ``P(s) = E''(s)`` at the points of ``s_grid``.

    The second derivative uses the five-point central stencil with step
    ``h`` (independent of the grid); near ``s = 0`` the gap function is
    continued analytically to negative lengths so the stencil stays centred.
    """
    s = np.atleast_1d(np.asarray(s_grid, dtype=float))
    if s.ndim != 1 or s.size == 0:
        raise ValueError("need a nonempty 1-d grid")
    if np.any(s < 0):
        raise ValueError("spacings are nonnegative")
    if h <= 0:
        raise ValueError("step must be positive")
    E = np.array([_sine_det_signed(v, m) for v in s])
    P = np.empty_like(E)
    for i, v in enumerate(s):
        e = [_sine_det_signed(v + k * h, m) for k in (-2, -1, 1, 2)]
        P[i] = (-e[0] + 16 * e[1] - 30 * E[i] + 16 * e[2] - e[3]) / (12 * h * h)
    return GapCurve(s, E, P)


def spacing_cdf(s, m: int = 64, h: float = 1e-4):
    """Spacing CDF ``1 + E'(s)`` for the sine kernel (vectorized)."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.empty_like(s)
    for i, v in enumerate(s):
        if v <= 0:
            out[i] = 0.0
            continue
        hh = min(h, v)
        out[i] = 1 + (sine_gap(v + hh, m) - sine_gap(v - hh, m)) / (2 * hh)
    return out


# ------------------------------------------------------------------ edge
def _check_airy_range(x):
    if np.any(np.abs(np.asarray(x)) > AIRY_RANGE):
        raise ValueError(f"airy is supported for |x| <= {AIRY_RANGE}")


def airy(x):
    """``Ai(x)`` for ``|x| <= 30``."""
    _check_airy_range(x)
    return special.airy(x)[0]


def airy_prime(x):
    """``Ai'(x)`` for ``|x| <= 30``."""
    _check_airy_range(x)
    return special.airy(x)[1]


def airy_kernel(x, y):
    """``(Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y)``, with ``Ai'(x)^2 - x Ai(x)^2`` on the diagonal."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ax, apx, _, _ = special.airy(x)
    ay, apy, _, _ = special.airy(y)
    d = x - y
    close = np.abs(d) < 1e-10
    off = (ax * apy - apx * ay) / np.where(close, 1.0, d)
    diag = apx * apx - x * ax * ax
    return np.where(close, diag, off)


def tracy_widom_beta2(s, m: int = 64, scale: float = 2.0, check: bool = False):
    """``F_2(s) = det(Id - K_Airy)`` on ``[s, inf)`` (vectorized over ``s``).

    With ``check=True`` the value is recomputed with ``2m`` nodes and an
    ``ArithmeticError`` is raised when the two differ by more than ``1e-10``.
    """
    arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(arr < -10):
        raise ValueError("tracy_widom_beta2 needs s >= -10")
    out = np.array([fredholm_det(KernelSpec(airy_kernel, v, math.inf, m, scale, "airy")) for v in arr])
    if check:
        fine = np.array([fredholm_det(KernelSpec(airy_kernel, v, math.inf, 2 * m, scale, "airy")) for v in arr])
        if np.max(np.abs(fine - out)) > 1e-10:
            raise ArithmeticError(f"Airy Nystrom not converged with m={m}; increase the node count")
    out = np.clip(out, 0.0, 1.0)
    return out if np.ndim(s) else float(out[0])


# -------------------------------------------------------------- finite N
def finite_n_gap(table: RecurrenceTable, N: int, interval, m: int = 80, scale: float = 1.0) -> float:
    """``det(Id - K_N)`` on ``interval`` with the Christoffel-Darboux kernel of ``table``."""
    a, b = interval
    kern = lambda x, y: cd_kernel(table, N, x, y)
    return fredholm_det(KernelSpec(kern, float(a), float(b), m, scale, "cd-finite-N"))


def largest_eigenvalue_density(table: RecurrenceTable, N: int, a, h: float = 1e-4, m: int = 80):
    """Density of the largest eigenvalue, ``d/da E([a, inf))``."""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    out = np.array(
        [(finite_n_gap(table, N, (v + h, math.inf), m) - finite_n_gap(table, N, (v - h, math.inf), m)) / (2 * h) for v in a]
    )
    return out if out.size > 1 else float(out[0])
