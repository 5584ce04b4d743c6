"""Large-N equilibrium densities.

Closed-form semicircle and Marchenko-Pastur laws, the one-cut solver based on
the Joukowsky parametrization ``x(z) = c + gamma (z + 1/z)``, and the symmetric
two-cut quartic.  The eigenvalue weight is ``exp(-N Tr V(M))``.

On the physical sheet the resolvent is ``wbar(x(z)) = sum_{k>=1} v_k z^-k``
and ``V'(x(z)) = wbar(z) + wbar(1/z)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy import integrate

from .model import FormalScalar, Potential, as_fraction, series_newton

__all__ = [
    "NegativeDensityError",
    "OneCutCurve",
    "TwoCutQuartic",
    "semicircle_density",
    "marchenko_pastur_density",
    "marchenko_pastur_edges",
    "solve_one_cut",
    "quartic_one_cut_gamma2",
    "quartic_two_cut",
    "tricomi_resolvent",
    "two_point_one_cut",
]

MP_PREFACTOR = "1/(2*pi*sigma2*x)"  # normalized MP prefactor for u >= 1


class NegativeDensityError(ValueError):
    """The one-cut ansatz produced a density that is negative on the cut."""


# ---------------------------------------------------------------- closed forms
def semicircle_density(x):
    """``sqrt(4 - x^2) / (2 pi)`` on ``[-2, 2]``, zero outside."""
    x = np.asarray(x, dtype=float)
    out = np.sqrt(np.clip(4.0 - x * x, 0.0, None)) / (2 * np.pi)
    return out if out.ndim else float(out)


def marchenko_pastur_edges(u, sigma2=1.0):
    r = math.sqrt(u)
    return sigma2 * (1 - r) ** 2, sigma2 * (1 + r) ** 2


def marchenko_pastur_density(x, u, sigma2=1.0):
    """Limiting density of the N eigenvalues of ``X X^T / N``, X of size N x p, ``u = p/N``.

    Normalized to unit mass: ``sqrt((a+ - x)(x - a-)) / (2 pi sigma2 x)``.
    """
    if u < 1:
        raise ValueError("u = p/N must be >= 1")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    lo, hi = marchenko_pastur_edges(u, sigma2)
    x = np.asarray(x, dtype=float)
    inside = (x > lo) & (x <= hi) & (x > 0)
    xs = np.where(inside, x, 1.0)
    val = np.sqrt(np.clip((hi - xs) * (xs - lo), 0.0, None)) / (2 * np.pi * sigma2 * xs)
    out = np.where(inside, val, 0.0)
    return out if out.ndim else float(out)


# ------------------------------------------------------------ Laurent helpers
def _laurent_powers(c, gamma, d):
    """Arrays ``L[m]`` of Laurent coefficients of ``x(z)^m``, exponents ``-d..d``."""
    size = 2 * d + 1
    base = np.zeros(size)
    base[d] = c
    base[d + 1] = gamma
    base[d - 1] = gamma
    powers = [np.zeros(size)]
    powers[0][d] = 1.0
    for _ in range(d):
        nxt = np.convolve(powers[-1], base)[d: d + size]
        powers.append(nxt)
    return powers


def _poly_of_x(coeffs, powers):
    out = np.zeros_like(powers[0])
    for j, a in enumerate(coeffs):
        out = out + a * powers[j]
    return out


@dataclass(frozen=True)
class OneCutCurve:
    """Joukowsky data of a one-cut equilibrium measure.

    ``v[k]`` is the coefficient of ``z^-k`` in the physical-sheet resolvent,
    ``k = 0..d``.  Scalars are floats, or ``FormalScalar`` in formal mode.
    """

    potential: Potential
    c: object
    gamma: object
    v: tuple

    @property
    def formal(self) -> bool:
        return isinstance(self.gamma, FormalScalar)

    @property
    def edges(self):
        """``(a, b)`` with ``a > b``."""
        if self.formal:
            raise TypeError("edges of a formal curve are series; use c and gamma")
        return self.c + 2 * self.gamma, self.c - 2 * self.gamma

    def x_of_z(self, z):
        return self.c + self.gamma * (z + 1 / z)

    def resolvent_z(self, z):
        return sum(vk * z ** (-k) for k, vk in enumerate(self.v))

    def z_of_x(self, x):
        """Physical-sheet preimage (``|z| > 1``) of a point off the cut."""
        x = np.asarray(x, dtype=complex)
        a, b = self.edges
        s = _sqrt_sigma(x, a, b)
        return (x - self.c + s) / (2 * self.gamma)

    def resolvent(self, x):
        return self.resolvent_z(self.z_of_x(x))

    def M_coeffs(self):
        """Ascending coefficients of the polynomial ``M(x)``."""
        a, b = self.edges
        t = self.potential.t
        d = len(t) - 1
        ca = [comb(2 * i, i) * (a / 4) ** i for i in range(d + 1)]
        cb = [comb(2 * i, i) * (b / 4) ** i for i in range(d + 1)]
        cm = np.convolve(ca, cb)[: d + 1]
        out = np.zeros(max(d, 1))
        for k in range(d):
            out[k] = sum(t[j] * cm[j - 1 - k] for j in range(k + 1, d + 1))
        return out

    def M(self, x):
        return np.polynomial.polynomial.polyval(x, self.M_coeffs())

    def sigma(self, x):
        a, b = self.edges
        return (x - a) * (x - b)

    def density(self, x):
        """``M(x) sqrt((a - x)(x - b)) / (2 pi)`` on the cut, zero outside."""
        a, b = self.edges
        x = np.asarray(x, dtype=float)
        root = np.sqrt(np.clip((a - x) * (x - b), 0.0, None))
        out = np.where((x > b) & (x < a), self.M(x) * root / (2 * np.pi), 0.0)
        return out if out.ndim else float(out)

    def rh_residual(self, samples=256):
        """max over the unit circle of ``|V'(x(z)) - wbar(z) - wbar(1/z)|``.

        Formal curves are checked as Laurent polynomials and return the
        number of nonvanishing coefficients (0 on success).
        """
        if self.formal:
            return _formal_rh_mismatch(self)
        z = np.exp(2j * np.pi * np.arange(samples) / samples)
        lhs = self.potential.derivative(self.x_of_z(z))
        return float(np.max(np.abs(lhs - self.resolvent_z(z) - self.resolvent_z(1 / z))))


def _formal_rh_mismatch(curve):
    def mul(p, q):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                out[e1 + e2] = out[e1 + e2] + c1 * c2 if e1 + e2 in out else c1 * c2
        return out

    x = {1: curve.gamma, -1: curve.gamma, 0: curve.c * FormalScalar.const(1, curve.gamma.order)}
    lhs = {}
    power = {0: FormalScalar.const(1, curve.gamma.order)}
    for tk in curve.potential.t:
        for e, c in power.items():
            lhs[e] = lhs[e] + c * tk if e in lhs else c * tk
        power = mul(power, x)
    for k, vk in enumerate(curve.v):
        for e in {-k, k}:
            lhs[e] = lhs[e] - vk if e in lhs else -vk
        if k == 0:
            lhs[0] = lhs[0] - vk
    return sum(1 for c in lhs.values() if not (c == 0))


def _sqrt_sigma(x, a, b):
    """Branch of ``sqrt((x-a)(x-b))`` that behaves like ``x`` at infinity."""
    return np.sqrt(x - a + 0j) * np.sqrt(x - b + 0j)


# -------------------------------------------------------------- formal solver
def _formal_one_cut(V: Potential, order: int, u0=None) -> OneCutCurve:
    if not V.is_even():
        raise ValueError("formal one-cut solving supports even potentials only")
    t = [c if isinstance(c, FormalScalar) else FormalScalar.rational(c) for c in V.t]
    t = [c if c.order is not None else FormalScalar.const(c[0], order) for c in t]
    d = len(t) - 1
    if u0 is None:
        lower = [c[0] for c in t]
        if any(lower[k - 1] for k in range(3, d + 2)):
            raise ValueError("pass u0 when the order-0 potential is not Gaussian")
        u0 = 1 / lower[1]

    def F(u):
        # gamma * v_1 - 1 written in u = gamma^2
        acc = FormalScalar.const(-1, order)
        for k in range(2, d + 2, 2):
            acc = acc + t[k - 1] * comb(k - 1, k // 2) * u ** (k // 2)
        return acc

    u = series_newton(F, u0, order)
    gamma = u.sqrt()
    # Laurent coefficients of V'(gamma (z + 1/z)) at z^-k
    v = []
    for k in range(d + 1):
        acc = FormalScalar.const(0, order)
        for j in range(1, d + 2):
            m = j - 1
            if (m - k) % 2 == 0 and m >= k:
                acc = acc + t[j - 1] * gamma**m * comb(m, (m - k) // 2)
        v.append(acc)
    return OneCutCurve(V, FormalScalar.const(0, order), gamma, tuple(v))


# --------------------------------------------------------------- float solver
def _laurent_data(V: Potential, c, g):
    t = np.array(V.t, dtype=float)
    d = len(t) - 1
    powers = _laurent_powers(c, g, d + 1)
    vp = _poly_of_x(t, powers)
    vpp = _poly_of_x([j * t[j] for j in range(1, d + 1)], powers)
    return vp, vpp, d + 1


def _residual(V, c, g):
    vp, vpp, D = _laurent_data(V, c, g)
    F = np.array([vp[D], g * vp[D - 1] - 1.0])
    # d/dc [z^k] V'(x) = [z^k] V''(x);  d/dgamma = [z^k] (z + 1/z) V''(x)
    dv0_dc = vpp[D]
    dv0_dg = vpp[D - 1] + vpp[D + 1]
    dv1_dc = vpp[D - 1]
    dv1_dg = vpp[D - 2] + vpp[D]
    J = np.array([[dv0_dc, dv0_dg], [g * dv1_dc, vp[D - 1] + g * dv1_dg]])
    return F, J


def _float_one_cut(V: Potential, tol=1e-14, max_iter=200, guess=(0.0, 1.0)) -> OneCutCurve:
    tl = np.array(V.t, dtype=float)
    if tl[-1] <= 0 or (len(tl) - 1) % 2 == 0:
        raise ValueError("weight does not decay: need odd deg V' with positive leading coefficient")
    c, g = guess
    F, J = _residual(V, c, g)
    for _ in range(max_iter):
        norm = np.linalg.norm(F)
        if norm < tol:
            break
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError as exc:
            raise ArithmeticError("singular Jacobian in one-cut Newton") from exc
        lam = 1.0
        while lam > 1e-12:
            c1, g1 = c + lam * step[0], g + lam * step[1]
            if g1 > 0:
                F1, J1 = _residual(V, c1, g1)
                if np.linalg.norm(F1) < norm:
                    break
            lam *= 0.5
        else:
            raise ArithmeticError("one-cut Newton stalled")
        c, g, F, J = c1, g1, F1, J1
    else:
        if np.linalg.norm(F) > 1e-10:
            raise ArithmeticError("one-cut Newton did not converge")
    vp, _, D = _laurent_data(V, c, g)
    d = len(tl) - 1
    v = tuple(float(vp[D - k]) for k in range(d + 1))
    curve = OneCutCurve(V, float(c), float(g), v)
    _check_positive(curve)
    return curve


def _check_positive(curve: OneCutCurve, nodes=1024, tol=-1e-12):
    a, b = curve.edges
    th = (np.arange(nodes) + 0.5) * np.pi / nodes
    x = 0.5 * (a + b) + 0.5 * (a - b) * np.cos(th)
    m = curve.M(x)
    if np.min(m) < tol:
        raise NegativeDensityError(
            f"one-cut density negative on the cut (min M = {np.min(m):.3e}); try two cuts"
        )


def solve_one_cut(V: Potential, order: int | None = None, u0=None) -> OneCutCurve:
    """Solve ``v_0 = 0``, ``v_1 = 1/gamma`` for the one-cut curve of ``V``.

    Float potentials use damped Newton in ``(c, gamma)``; rational or series
    potentials are solved order by order up to ``t^order``.
    """
    if V.kind == "float":
        return _float_one_cut(V)
    if order is None:
        raise ValueError("formal solving needs a truncation order")
    return _formal_one_cut(V, order, u0)


def quartic_one_cut_gamma2(t: float) -> float:
    """Closed form ``gamma^2`` for ``V = (x^2/2 - x^4/4)/t``."""
    return (1 + math.sqrt(1 - 12 * t)) / 6


def quartic_potential(t) -> Potential:
    """Convergent quartic ``V = (x^2/2 - x^4/4)/t`` (``t < 0``)."""
    return Potential((0.0, 1.0 / t, 0.0, -1.0 / t), "float")


# ------------------------------------------------------------------ two-cut
@dataclass(frozen=True)
class TwoCutQuartic:
    """Symmetric two-cut solution for ``V = (x^2/2 - x^4/4)/t``, ``-1/4 < t < 0``."""

    t: float
    a: float
    b: float

    def density(self, x):
        x = np.asarray(x, dtype=float)
        ax = np.abs(x)
        inside = (ax > self.b) & (ax < self.a)
        arg = np.clip((self.a**2 - x * x) * (x * x - self.b**2), 0.0, None)
        out = np.where(inside, ax * np.sqrt(arg) / (2 * np.pi * abs(self.t)), 0.0)
        return out if out.ndim else float(out)

    def M(self, x):
        return -np.asarray(x)

    def resolvent(self, x):
        """Physical branch, behaving like ``1/x`` at infinity."""
        x = np.asarray(x, dtype=complex)
        root = _sqrt_sigma(x * x, self.a**2, self.b**2)
        # x root - x^3 rationalized to avoid cancellation at large |x|
        ab2 = (self.a * self.b) ** 2
        return (x + x * (ab2 - 2 * x * x) / (root + x * x)) / (2 * self.t)

    def mass(self):
        f = lambda s: self.density(s)
        return 2 * integrate.quad(f, self.b, self.a, epsabs=1e-13, epsrel=1e-13, limit=200)[0]


def quartic_two_cut(t: float) -> TwoCutQuartic:
    if not -0.25 < t < 0:
        raise ValueError("two-cut quartic needs -1/4 < t < 0")
    r = math.sqrt(-t)
    return TwoCutQuartic(t, math.sqrt(1 + 2 * r), math.sqrt(1 - 2 * r))


# ---------------------------------------------------------------- Tricomi
def tricomi_resolvent(V: Potential, support, x, nodes=256):
    """Resolvent from the support via Gauss-Chebyshev quadrature.

    ``wbar(x) = sqrt(sigma(x))/(2 pi) * int_b^a V'(s) ds / ((x - s) sqrt((a-s)(s-b)))``.
    """
    a, b = max(support), min(support)
    x = np.asarray(x, dtype=complex)
    if np.any((np.abs(x.imag) < 1e-300) & (x.real >= b) & (x.real <= a)):
        raise ValueError("x lies on the cut")
    th = (np.arange(nodes) + 0.5) * np.pi / nodes
    s = 0.5 * (a + b) + 0.5 * (a - b) * np.cos(th)
    vs = V.derivative(s)
    integral = np.pi / nodes * np.sum(vs / (x[..., None] - s), axis=-1)
    out = _sqrt_sigma(x, a, b) * integral / (2 * np.pi)
    return out if out.ndim else complex(out)


# ----------------------------------------------------------- two-point
def two_point_one_cut(curve: OneCutCurve, x1, x2):
    """Connected planar two-point resolvent ``wbar_2(x1, x2)``.

    In the uniformizing variable it is ``1 / ((z1 z2 - 1)^2 x'(z1) x'(z2))``.
    """
    z1 = curve.z_of_x(x1)
    z2 = curve.z_of_x(x2)
    g = curve.gamma
    dx1 = g * (1 - 1 / z1**2)
    dx2 = g * (1 - 1 / z2**2)
    out = 1.0 / ((z1 * z2 - 1) ** 2 * dx1 * dx2)
    return out if np.ndim(out) else complex(out)


def two_point_q2(curve: OneCutCurve, x1, x2):
    """Same quantity written with ``Q_2`` and ``sqrt(sigma)``."""
    a, b = curve.edges
    x1 = np.asarray(x1, dtype=complex)
    x2 = np.asarray(x2, dtype=complex)
    q2 = x1 * x2 - 0.5 * (a + b) * (x1 + x2) + a * b
    s1, s2 = _sqrt_sigma(x1, a, b), _sqrt_sigma(x2, a, b)
    out = -(1 - q2 / (s1 * s2)) / (2 * (x1 - x2) ** 2)
    return out if out.ndim else complex(out)


def gamma_squared_series(order: int) -> FormalScalar:
    """``gamma^2`` for the formal quartic ``x^2/2 - t x^4/4``."""
    t = FormalScalar.coupling(order)
    return series_newton(lambda u: u - 1 - 3 * t * u * u, 1, order)


def formal_quartic(order: int) -> Potential:
    t = FormalScalar.coupling(order)
    return Potential((0, 1, 0, -t), "series")


def mass(curve: OneCutCurve, nodes: int = 512) -> float:
    """Integral of the one-cut density.

    With ``x = c + h cos(theta)`` the integrand is a trigonometric polynomial,
    so the periodic trapezoid rule is exact once ``nodes`` exceeds its degree.
    """
    a, b = curve.edges
    h = 0.5 * (a - b)
    th = 2 * np.pi * np.arange(nodes) / nodes
    f = curve.M(0.5 * (a + b) + h * np.cos(th)) * (h * np.sin(th)) ** 2
    return float(np.mean(f) * np.pi / (2 * np.pi))
