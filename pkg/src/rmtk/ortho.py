"""Orthogonal polynomials for a weight ``exp(-V(x))`` on the real line.

Moments are computed once in high precision, converted to the three-term
recurrence ``x p_k = p_{k+1} + S_k p_k + gamma_k^2 p_{k-1}`` by the Chebyshev
algorithm, and everything else (kernels, partition functions, traces) is
built on the Jacobi matrix ``Q`` with diagonal ``S_k`` and off-diagonal
``gamma_k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import mpmath
import numpy as np

from .model import Potential

__all__ = [
    "MomentTable",
    "RecurrenceTable",
    "moments",
    "recurrence_from_moments",
    "recurrence_for",
    "string_equation_residual",
    "partition_function",
    "hankel_partition",
    "orthopoly",
    "orthopoly_coeffs",
    "psi",
    "cd_kernel",
    "cd_kernel_sum",
    "joint_density",
    "trace_moment",
    "motzkin_paths",
    "motzkin_terms",
    "banded_power_entry",
    "resolvent_continued_fraction",
]


@dataclass
class MomentTable:
    """Moments ``M_k = int x^k exp(-V(x)) dx`` for ``k < len(values)``."""

    values: list
    dps: int
    exact: bool = False
    nodes: int = 0
    potential: Potential | None = None

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


@dataclass
class RecurrenceTable:
    """Jacobi-matrix data.

    ``R[k] = gamma_k^2`` for ``k >= 1`` (``R[0] = 0``), ``S[k]`` for ``k >= 0``
    and optionally ``h[k]``.  Entries may be Fractions, mpf or floats.
    """

    R: list
    S: list
    h: list | None = None
    potential: Potential | None = None
    moments: MomentTable | None = None
    dps: int = 15
    _gamma: list | None = field(default=None, repr=False)

    @classmethod
    def from_gamma(cls, gamma, S, **kw):
        """Build from ``gamma[k]`` (``gamma[0]`` ignored) keeping ``gamma`` exact."""
        gamma = list(gamma)
        gamma[0] = 0
        tab = cls([g * g for g in gamma], list(S), **kw)
        tab._gamma = gamma
        return tab

    @property
    def depth(self) -> int:
        return len(self.S)

    @property
    def gamma(self):
        if self._gamma is None:
            with mpmath.workdps(self.dps):
                self._gamma = [0] + [_sqrt(r) for r in self.R[1:]]
        return self._gamma

    def floats(self):
        """``(gamma, S)`` as float arrays."""
        return np.array([float(g) for g in self.gamma]), np.array([float(s) for s in self.S])


def _sqrt(r):
    if isinstance(r, Fraction):
        n, d = r.numerator, r.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return mpmath.sqrt(mpmath.mpf(n) / d)
    if isinstance(r, float):
        return math.sqrt(r)
    return mpmath.sqrt(r)


# ------------------------------------------------------------------ moments
def _gaussian_t2(V: Potential):
    t = V.t
    if len(t) == 2 and t[0] == 0 and t[1] > 0:
        return t[1]
    return None


def _check_weight(V: Potential):
    deg = len(V.t)
    if deg % 2 or float(V.t[-1]) <= 0:
        raise ValueError("weight exp(-V) diverges: need even degree and positive leading coefficient")


def _mp_V(V, x):
    acc = mpmath.mpf(0)
    for k in range(len(V.t), 0, -1):
        acc = (acc + mpmath.mpf(_to_mp(V.t[k - 1])) / k) * x
    return acc


def _to_mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c)


def moments(V: Potential, count: int, dps: int = 50, nodes: int | None = None) -> MomentTable:
    """``M_0 .. M_{count-1}`` of ``exp(-V)`` on the real line.

    The pure Gaussian ``V = t_2 x^2/2`` uses the closed form.  Otherwise a
    sinh-mapped trapezoid rule is refined by doubling until every moment
    is stable to ``dps - 5`` digits.
    """
    _check_weight(V)
    with mpmath.workdps(dps):
        t2 = _gaussian_t2(V)
        if t2 is not None:
            t2 = _to_mp(t2)
            m0 = mpmath.sqrt(2 * mpmath.pi / t2)
            vals = []
            for k in range(count):
                if k % 2:
                    vals.append(mpmath.mpf(0))
                else:
                    vals.append(m0 * mpmath.fac2(k - 1) / t2 ** (k // 2))
            return MomentTable(vals, dps, exact=True, potential=V)
        vals, used = _quadrature_moments(V, count, dps, nodes)
        if V.is_even():
            vals = [mpmath.mpf(0) if k % 2 else v for k, v in enumerate(vals)]
        return MomentTable(vals, dps, exact=False, nodes=used, potential=V)


def _support_box(V, dps, count=1):
    """Half-width outside of which ``|x|^k exp(-V + Vmin)``, ``k < count``, is below ``10^-(dps + 10)``
    relative to the size of the ``k``-th moment.

    ``r``, the distance at which ``V`` rises by one unit, sets the moment scale ``r^k``.
    """
    tf = np.array([float(c) for c in V.t])
    dV = np.polynomial.Polynomial(tf)
    crit = [r.real for r in dV.roots() if abs(r.imag) < 1e-9] or [0.0]
    Vf = lambda x: sum(tf[k - 1] * x**k / k for k in range(1, len(tf) + 1))
    x0 = min(crit, key=Vf)
    vmin = Vf(x0)
    budget = (dps + 10) * math.log(10)
    r = 1.0
    while min(Vf(x0 + r), Vf(x0 - r)) - vmin > 1:
        r /= 1.5
    while min(Vf(x0 + r), Vf(x0 - r)) - vmin < 1:
        r *= 1.5
    k = count - 1
    excess = lambda x: Vf(x) - vmin - k * math.log(max(abs(x), r) / r)
    lo_step, hi_step = 1.0, 1.0
    while excess(x0 + hi_step) < budget:
        hi_step *= 1.5
    while excess(x0 - lo_step) < budget:
        lo_step *= 1.5
    return x0, max(lo_step, hi_step), vmin


def _quadrature_moments(V, count, dps, nodes):
    x0, width, vmin = _support_box(V, dps, count)
    # x = x0 + s sinh(tau); tau range where sinh reaches the box
    s = width / 4
    tmax = mpmath.asinh(width / s)
    n = nodes or 256
    target = mpmath.mpf(10) ** (-(dps - 5))
    prev = None
    vmin_mp = mpmath.mpf(vmin)
    while True:
        h = 2 * tmax / n
        acc = [mpmath.mpf(0)] * count
        mag = [mpmath.mpf(0)] * count
        for j in range(n + 1):
            tau = -tmax + j * h
            x = x0 + s * mpmath.sinh(tau)
            wgt = mpmath.exp(-(_mp_V(V, x) - vmin_mp)) * s * mpmath.cosh(tau) * h
            if j in (0, n):
                wgt /= 2
            p = wgt
            for k in range(count):
                acc[k] += p
                mag[k] += abs(p)
                p *= x
        if prev is not None:
            ok = all(
                abs(a - b) <= target * m for a, b, m in zip(acc, prev, mag)
            )
            if ok:
                scale = mpmath.exp(-vmin_mp)
                return [a * scale for a in acc], n
        if n > 1 << 16:
            raise ArithmeticError("moment quadrature failed to converge")
        prev = acc
        n *= 2


# ---------------------------------------------------------------- recurrence
def recurrence_from_moments(mom: MomentTable, K: int) -> RecurrenceTable:
    """Chebyshev algorithm: ``S_0..S_{K-1}``, ``gamma_1..gamma_{K-1}``, ``h_0..h_{K-1}``.

    Needs ``2K`` moments.  Raises ``ArithmeticError`` naming the index at
    which ``h_k`` stops being positive.
    """
    if 2 * K > len(mom):
        raise ValueError(f"need {2 * K} moments, have {len(mom)}")
    with mpmath.workdps(mom.dps):
        mu = [mpmath.mpf(v) for v in mom.values]
        S = [mu[1] / mu[0]]
        R = [mpmath.mpf(0)]
        h = [mu[0]]
        sig_prev = [mpmath.mpf(0)] * (2 * K)
        sig = mu[: 2 * K]
        for k in range(1, K):
            new = [mpmath.mpf(0)] * (2 * K)
            for l in range(k, 2 * K - k):
                new[l] = sig[l + 1] - S[k - 1] * sig[l] - R[k - 1] * sig_prev[l] if k > 1 else (
                    sig[l + 1] - S[0] * sig[l]
                )
            if new[k] <= 0:
                raise ArithmeticError(f"Hankel positivity lost at index {k}; raise the precision")
            S.append(new[k + 1] / new[k] - sig[k] / sig[k - 1])
            R.append(new[k] / sig[k - 1])
            h.append(new[k])
            sig_prev, sig = sig, new
    return RecurrenceTable(R, S, h, potential=mom.potential, moments=mom, dps=mom.dps)


def recurrence_for(V: Potential, K: int, dps: int | None = None) -> RecurrenceTable:
    """Moments plus Chebyshev algorithm with a precision heuristic."""
    dps = dps or max(50, 30 + 3 * K)
    return recurrence_from_moments(moments(V, 2 * K, dps=dps), K)


def _apply_q(table, vec, sym=True):
    """``Q @ vec`` for a sparse dict vector (symmetric or R-scaled Q)."""
    out = {}
    for i, c in vec.items():
        if i + 1 < table.depth:
            w = table.gamma[i + 1] if sym else 1
            out[i + 1] = out.get(i + 1, 0) + w * c
        out[i] = out.get(i, 0) + table.S[i] * c
        if i >= 1:
            w = table.gamma[i] if sym else table.R[i]
            out[i - 1] = out.get(i - 1, 0) + w * c
    return out


def banded_power_entry(table, m, i, j, sym=True):
    """``(Q^m)_{i,j}`` on the banded representation."""
    if max(i, j) + (m + 1) // 2 >= table.depth + 1 and m > 0:
        if max(i, j) + m // 2 + 1 > table.depth:
            raise ValueError("table depth insufficient for this power")
    vec = {j: 1}
    for _ in range(m):
        vec = _apply_q(table, vec, sym)
    return vec.get(i, 0)


def string_equation_residual(V: Potential, table: RecurrenceTable, k: int):
    """Residuals ``(V'(Q))_{k,k-1} - k/gamma_k`` and ``(V'(Q))_{k,k}``."""
    with mpmath.workdps(table.dps):
        return _string_residual(V, table, k)


def _string_residual(V, table, k):
    d = len(V.t) - 1
    if k < 1 or k + d // 2 + 1 >= table.depth:
        raise ValueError("table depth insufficient for the string equation at this k")
    sub = 0
    diag = 0
    vec_a = {k - 1: 1}
    vec_b = {k: 1}
    for j in range(d + 1):
        c = V.t[j]
        if isinstance(c, float):
            c = mpmath.mpf(c)
        elif isinstance(c, Fraction) and not isinstance(table.S[0], Fraction):
            c = _to_mp(c)
        if j > 0:
            vec_a = _apply_q(table, vec_a)
            vec_b = _apply_q(table, vec_b)
        sub = sub + c * vec_a.get(k, 0)
        diag = diag + c * vec_b.get(k, 0)
    return sub - k / table.gamma[k], diag


def partition_function(table: RecurrenceTable, N: int):
    """``Z_N = prod_{k<N} h_k``."""
    if table.h is None or N > len(table.h):
        raise ValueError("depth exceeded")
    out = 1
    for k in range(N):
        out = out * table.h[k]
    return out


def hankel_partition(mom: MomentTable, N: int, basis: str = "monomial"):
    """``det(M_{i+j})_{0<=i,j<N}``.

    ``basis="shifted"`` uses moments of ``(x - 1)^k`` instead, an invertible
    unitriangular change of basis that leaves the determinant unchanged.
    """
    if 2 * N - 1 > len(mom):
        raise ValueError("depth exceeded")
    if N == 0:
        return mpmath.mpf(1)
    with mpmath.workdps(mom.dps):
        if basis == "monomial":
            H = mpmath.matrix(N, N)
            for i in range(N):
                for j in range(N):
                    H[i, j] = mom.values[i + j]
            return mpmath.det(H)
        if basis == "shifted":
            # G_ij = int (x-1)^i (x-1)^j w
            H = mpmath.matrix(N, N)
            for i in range(N):
                for j in range(N):
                    n = i + j
                    H[i, j] = mpmath.fsum(
                        mpmath.binomial(n, r) * (-1) ** (n - r) * mom.values[r] for r in range(n + 1)
                    )
            return mpmath.det(H)
    raise ValueError(f"unknown basis {basis!r}")


# ---------------------------------------------------------- polynomials
def orthopoly_coeffs(table: RecurrenceTable, k: int):
    """Ascending coefficients of the monic ``p_k`` (exact for exact tables)."""
    if k > table.depth:
        raise ValueError("depth exceeded")
    prev, cur = [], [1]
    for j in range(k):
        nxt = [0] + cur  # x p_j
        for i, c in enumerate(cur):
            nxt[i] = nxt[i] - table.S[j] * c
        if j >= 1:
            for i, c in enumerate(prev):
                nxt[i] = nxt[i] - table.R[j] * c
        prev, cur = cur, nxt
    return cur


def orthopoly(table: RecurrenceTable, k: int, lam, method: str = "recurrence"):
    """Monic ``p_k(lam)`` by recurrence, Hankel determinant or ``det(lam - Q_k)``."""
    if k > table.depth:
        raise ValueError("depth exceeded")
    if method == "recurrence":
        p0, p1 = 0, 1
        for j in range(k):
            p0, p1 = p1, (lam - table.S[j]) * p1 - (table.R[j] * p0 if j else 0)
        return p1
    if method == "qminor":
        if k == 0:
            return 1
        A = mpmath.matrix(k, k)
        for i in range(k):
            A[i, i] = lam - table.S[i]
            if i + 1 < k:
                A[i, i + 1] = A[i + 1, i] = -table.gamma[i + 1]
        return mpmath.det(A)
    if method == "hankel":
        mom = table.moments
        if mom is None or 2 * k > len(mom):
            raise ValueError("Hankel evaluator needs 2k moments")
        if k == 0:
            return 1
        with mpmath.workdps(mom.dps):
            A = mpmath.matrix(k + 1, k + 1)
            for i in range(k):
                for j in range(k + 1):
                    A[i, j] = mom.values[i + j]
            for j in range(k + 1):
                A[k, j] = mpmath.mpf(lam) ** j
            D = mpmath.matrix(k, k)
            for i in range(k):
                for j in range(k):
                    D[i, j] = mom.values[i + j]
            return mpmath.det(A) / mpmath.det(D)
    raise ValueError(f"unknown method {method!r}")


# -------------------------------------------------------------- kernels
def _psi_block(table, N, x, derivative=False):
    """Orthonormal ``psi_k(x)`` for ``k <= N`` (rows), floats, overflow-safe.

    Returns ``(P, dP, logscale)`` where the true values are
    ``P * exp(logscale - V(x)/2)``; ``dP`` holds derivatives of the
    polynomial parts only.
    """
    gam, S = table.floats()
    h0 = float(table.h[0])
    x = np.atleast_1d(np.asarray(x, dtype=float))
    P = np.zeros((N + 1, x.size))
    dP = np.zeros((N + 1, x.size))
    log = np.zeros(x.size)
    P[0] = 1.0 / math.sqrt(h0)
    if N >= 1:
        P[1] = (x - S[0]) * P[0] / gam[1]
        dP[1] = P[0] / gam[1]
    for k in range(1, N):
        P[k + 1] = ((x - S[k]) * P[k] - gam[k] * P[k - 1]) / gam[k + 1]
        if derivative:
            dP[k + 1] = ((x - S[k]) * dP[k] + P[k] - gam[k] * dP[k - 1]) / gam[k + 1]
        big = np.abs(P[k + 1]) > 1e150
        if np.any(big):
            f = np.where(big, 1e-150, 1.0)
            P[: k + 2] *= f
            dP[: k + 2] *= f
            log -= np.log(f)
    return P, dP, log


def _half_weight_log(table, x):
    V = table.potential
    tf = np.array([float(c) for c in V.t])
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return -0.5 * sum(tf[k - 1] * x**k / k for k in range(1, len(tf) + 1))


def psi(table: RecurrenceTable, k: int, x):
    """Orthonormal function ``p_k(x) exp(-V(x)/2) / sqrt(h_k)``."""
    P, _, log = _psi_block(table, k, x)
    out = P[k] * np.exp(log + _half_weight_log(table, x))
    return out if np.ndim(x) else float(out[0])


def cd_kernel(table: RecurrenceTable, N: int, x, y):
    """Christoffel-Darboux kernel ``K_N(x, y)`` (vectorized, diagonal by l'Hopital)."""
    if N + 1 > table.depth:
        raise ValueError("depth exceeded")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    x, y = x.ravel(), y.ravel()
    gN = float(table.gamma[N])
    Px, dPx, lx = _psi_block(table, N, x, derivative=True)
    Py, dPy, ly = _psi_block(table, N, y, derivative=True)
    wx = lx + _half_weight_log(table, x)
    wy = ly + _half_weight_log(table, y)
    diff = y - x
    close = np.abs(diff) < 1e-9 * (1 + np.abs(x))
    safe = np.where(close, 1.0, diff)
    off = gN * (Px[N - 1] * Py[N] - Px[N] * Py[N - 1]) / safe
    xm = 0.5 * (x + y)
    Pm, dPm, lm = _psi_block(table, N, xm, derivative=True)
    diag = gN * (dPm[N] * Pm[N - 1] - dPm[N - 1] * Pm[N])
    wm = 2 * (lm + _half_weight_log(table, xm))
    out = np.where(close, diag * np.exp(wm), off * np.exp(wx + wy))
    out = out.reshape(shape)
    return out if out.ndim else float(out)


def cd_kernel_sum(table: RecurrenceTable, N: int, x, y):
    """``sum_{k<N} psi_k(x) psi_k(y)``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    Px, _, lx = _psi_block(table, N, x.ravel())
    Py, _, ly = _psi_block(table, N, y.ravel())
    w = np.exp(lx + ly + _half_weight_log(table, x.ravel()) + _half_weight_log(table, y.ravel()))
    out = (np.sum(Px[:N] * Py[:N], axis=0) * w).reshape(shape)
    return out if out.ndim else float(out)


def joint_density(table: RecurrenceTable, N: int, k: int, points):
    """``R_k = ((N-k)!/N!) det K_N(lambda_i, lambda_j)``."""
    if k > N:
        raise ValueError("k must not exceed N")
    if k == 0:
        return 1.0
    pts = np.asarray(points, dtype=float).reshape(k)
    Kmat = cd_kernel(table, N, pts[:, None], pts[None, :])
    return float(np.linalg.det(np.atleast_2d(Kmat)) * math.factorial(N - k) / math.factorial(N))


# --------------------------------------------------------- traces and paths
def trace_moment(table: RecurrenceTable, N: int, m: int):
    """``Tr Pi_N Q^m = sum_{k<N} (Q^m)_{kk}``.

    Uses the similar non-symmetric form of ``Q`` (off-diagonals ``1`` and
    ``gamma_k^2``) so exact tables give exact answers.
    """
    if N + m // 2 > table.depth:
        raise ValueError("table depth insufficient")
    if m % 2 and all(s == 0 for s in table.S[: N + m]):
        return 0
    total = 0
    for k in range(N):
        vec = {k: 1}
        for _ in range(m):
            vec = _apply_q(table, vec, sym=False)
        total = total + vec.get(k, 0)
    return total


def motzkin_terms(table: RecurrenceTable, start: int, end: int, length: int):
    """All Motzkin paths as ``(steps, weight factors)``.

    Steps are ``'U'``, ``'F'``, ``'D'``; an up or down step between heights
    ``h`` and ``h+1`` carries ``gamma_{h+1}``, a flat step at height ``h``
    carries ``S_h``.
    """
    out = []
    for steps in product("UFD", repeat=length):
        h = start
        factors = []
        ok = True
        for s in steps:
            if s == "U":
                factors.append(("gamma", h + 1))
                h += 1
            elif s == "D":
                if h == 0:
                    ok = False
                    break
                factors.append(("gamma", h))
                h -= 1
            else:
                factors.append(("S", h))
        if ok and h == end:
            out.append(("".join(steps), factors))
    return out


def motzkin_paths(table: RecurrenceTable, start: int, end: int, length: int):
    """Weighted sum over Motzkin paths from ``start`` to ``end``."""
    total = 0
    for _, factors in motzkin_terms(table, start, end, length):
        w = 1
        for kind, idx in factors:
            w = w * (table.gamma[idx] if kind == "gamma" else table.S[idx])
        total = total + w
    return total


def resolvent_continued_fraction(table: RecurrenceTable, x, n: int):
    """``ptilde_n(x) / p_n(x)``, the n-th convergent of ``((x - Q)^-1)_{00}``."""
    if n < 1 or n > table.depth:
        raise ValueError("depth out of range")
    p_prev, p_cur = 1, x - table.S[0]
    t_prev, t_cur = 0, 1
    for j in range(1, n):
        p_prev, p_cur = p_cur, (x - table.S[j]) * p_cur - table.R[j] * p_prev
        t_prev, t_cur = t_cur, (x - table.S[j]) * t_cur - table.R[j] * t_prev
    if p_cur == 0:
        raise ZeroDivisionError("p_n(x) = 0; x inside the spectral region")
    return t_cur / p_cur
