"""One-cut topological recursion with exact residue calculus.

The spectral curve is ``x(z) = gamma (z + 1/z)`` with ``omega_{0,1} = y dx``
and ``y(z) = sum_{k>=1} v_k z^-k``; branch points sit at ``z = +1, -1`` and the
involution is ``z -> 1/z``.  Correlators ``omega_{g,n}`` are stored as
finite sums of pole terms ``prod_i dz_i / (z_i - s_i)^{k_i}`` with
``s_i in {+1, -1}`` and coefficients in :class:`FormalScalar`.

Residues are taken from local Laurent series in ``u = z - a``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .model import FormalScalar, as_fraction
from .saddle import OneCutCurve, formal_quartic, solve_one_cut

__all__ = [
    "LSeries",
    "CorrelatorForm",
    "SpectralCurve",
    "TopologicalRecursion",
    "bergman",
    "residue_at_branch",
    "pole_cap",
    "quartic_curve",
    "gaussian_curve",
]

HARD_DEPTH_CAP = 256


def _binom(n: int, m: int) -> int:
    """Binomial coefficient for any integer ``n`` and ``m >= 0``."""
    if m < 0:
        return 0
    if n >= 0:
        return comb(n, m)
    return (-1) ** m * comb(m - n - 1, m)


def _nz(c) -> bool:
    return bool(c)


class LSeries:
    """Laurent series ``sum_e c[e - val] u^e`` known for exponents ``<= top``.

    ``top is None`` marks an exact Laurent polynomial.
    """

    __slots__ = ("val", "c", "top")

    def __init__(self, val: int, coeffs, top=None):
        self.val = val
        self.c = list(coeffs)
        self.top = top
        if top is not None:
            keep = top - val + 1
            if keep < len(self.c):
                self.c = self.c[: max(keep, 0)]

    @classmethod
    def monomial(cls, e: int, coeff=Fraction(1)):
        return cls(e, [coeff], None)

    def hi(self):
        """Largest exponent that is stored."""
        return self.val + len(self.c) - 1

    def __getitem__(self, e: int):
        if self.top is not None and e > self.top:
            raise IndexError(f"u^{e} beyond known order {self.top}")
        i = e - self.val
        if 0 <= i < len(self.c):
            return self.c[i]
        return Fraction(0)

    def known_top(self):
        return float("inf") if self.top is None else self.top

    def __add__(self, other: "LSeries"):
        tops = [t for t in (self.top, other.top) if t is not None]
        top = min(tops) if tops else None
        lo = min(self.val, other.val)
        hi = max(self.hi(), other.hi())
        if top is not None:
            hi = min(hi, top)
        out = []
        for e in range(lo, hi + 1):
            out.append(self._get(e) + other._get(e))
        return LSeries(lo, out, top)

    def _get(self, e):
        i = e - self.val
        if 0 <= i < len(self.c):
            return self.c[i]
        return Fraction(0)

    def scale(self, s):
        return LSeries(self.val, [s * x for x in self.c], self.top)

    def __neg__(self):
        return self.scale(-1)

    def mul(self, other: "LSeries", top=None):
        cands = []
        if self.top is not None:
            cands.append(self.top + other.val)
        if other.top is not None:
            cands.append(other.top + self.val)
        if top is not None:
            cands.append(top)
        new_top = min(cands) if cands else None
        val = self.val + other.val
        n = self.hi() + other.hi() - val + 1
        if new_top is not None:
            n = min(n, new_top - val + 1)
        if n <= 0:
            return LSeries(val, [], new_top)
        out = [Fraction(0)] * n
        a, b = self.c, other.c
        for i, x in enumerate(a):
            if i >= n:
                break
            if not _nz(x):
                continue
            lim = min(len(b), n - i)
            for j in range(lim):
                y = b[j]
                if _nz(y):
                    out[i + j] = out[i + j] + x * y
        return LSeries(val, out, new_top)

    __mul__ = mul

    def residue(self):
        return residue_at_branch(self)

    def shift(self, k: int):
        """Multiply by ``u^k``."""
        return LSeries(self.val + k, self.c, None if self.top is None else self.top + k)

    def normalized(self):
        """Strip leading zeros so that ``val`` is the true valuation."""
        i = 0
        while i < len(self.c) and not _nz(self.c[i]):
            i += 1
        return LSeries(self.val + i, self.c[i:], self.top)

    def inverse(self, top: int):
        """``1/f`` known up to ``u^top``; the leading coefficient must be a unit."""
        f = self.normalized()
        if not f.c:
            raise ZeroDivisionError("zero series")
        v = f.val
        n = top + v + 1  # number of coefficients of the unit part we need
        if f.top is not None and f.top - v + 1 < n:
            raise ArithmeticError("series not deep enough to invert")
        g = [f._get(v + i) for i in range(max(n, 1))]
        c0 = g[0]
        inv0 = 1 / c0 if not isinstance(c0, FormalScalar) else c0.inverse()
        h = [inv0]
        for m in range(1, n):
            acc = Fraction(0)
            for i in range(1, m + 1):
                if _nz(g[i]):
                    acc = acc + g[i] * h[m - i]
            h.append(-(acc * inv0))
        return LSeries(-v, h, top)

    def derivative(self):
        out = [(self.val + i) * x for i, x in enumerate(self.c)]
        return LSeries(self.val - 1, out, None if self.top is None else self.top - 1)

    def primitive(self):
        """Termwise primitive with zero constant; fails on a ``u^-1`` term."""
        out = []
        for i, x in enumerate(self.c):
            e = self.val + i
            if e == -1:
                if _nz(x):
                    raise ArithmeticError("series has a residue; no Laurent primitive")
                out.append(Fraction(0))
            else:
                out.append(x * Fraction(1, e + 1))
        return LSeries(self.val + 1, out, None if self.top is None else self.top + 1)

    def compose(self, eps: "LSeries", top: int):
        """``f(eps(u))`` for ``eps`` of valuation one."""
        e = eps.normalized()
        if e.val != 1:
            raise ValueError("inner series must have valuation 1")
        pos = LSeries(0, [Fraction(1)], None)
        neg_base = e.inverse(top + max(0, -self.val))
        acc = LSeries(0, [], top)
        power = pos
        # nonnegative powers
        for k in range(0, self.hi() + 1):
            if k > 0:
                power = power.mul(e, top=top + max(0, -self.val))
            if k >= self.val:
                ck = self._get(k)
                if _nz(ck):
                    acc = acc + power.scale(ck)
        power = pos
        for k in range(1, -self.val + 1):
            power = power.mul(neg_base, top=top)
            ck = self._get(-k)
            if _nz(ck):
                acc = acc + power.scale(ck)
        return LSeries(acc.val, acc.c, top)

    def equals(self, other: "LSeries", top: int) -> bool:
        lo = min(self.val, other.val)
        return all(self._get(e) == other._get(e) for e in range(lo, top + 1))

    def evaluate(self, u):
        """Sum of the stored terms; formal coefficients are read at ``t = 0`` for numeric ``u``."""
        if isinstance(u, (float, complex)):
            return sum(float(x) * u ** (self.val + i) for i, x in enumerate(self.c))
        return sum(x * u ** (self.val + i) for i, x in enumerate(self.c))

    def __repr__(self):
        terms = [f"({x})u^{self.val + i}" for i, x in enumerate(self.c) if _nz(x)]
        tail = "" if self.top is None else f" + O(u^{self.top + 1})"
        return "LSeries(" + (" + ".join(terms) or "0") + tail + ")"


def residue_at_branch(series: LSeries):
    """Coefficient of ``u^-1``."""
    if series.top is not None and series.top < -1:
        raise ArithmeticError("pole order exceeds the series working depth")
    return series._get(-1)


def bergman(z1, z2):
    """Coefficient of ``dz1 dz2`` in ``B(z1, z2) = dz1 dz2 / (z1 - z2)^2``."""
    if z1 == z2:
        raise ZeroDivisionError("Bergman kernel is singular on the diagonal")
    return 1 / (z1 - z2) ** 2


def pole_cap(g: int, n: int) -> int:
    """Maximal pole order of ``omega_{g,n}`` at a branch point."""
    return 6 * g - 4 + 2 * n


class CorrelatorForm(dict):
    """``omega_{g,n}`` as ``{((k_1, s_1), ..., (k_n, s_n)): coeff}``."""

    def __init__(self, g: int, n: int, data=None):
        super().__init__()
        self.g = g
        self.n = n
        for k, v in (data or {}).items():
            if _nz(v):
                self[k] = v

    def max_pole(self) -> int:
        return max((k for key in self for k, _ in key), default=0)

    def is_symmetric(self) -> bool:
        from itertools import permutations

        for key, val in self.items():
            for perm in permutations(range(self.n)):
                other = tuple(key[i] for i in perm)
                if self.get(other, Fraction(0)) != val:
                    return False
        return True

    def residue_free(self) -> bool:
        return all(k >= 2 for key in self for k, _ in key)

    def evaluate(self, zs):
        """Coefficient of ``dz_1 ... dz_n`` at numeric points."""
        total = 0
        for key, c in self.items():
            term = c
            for (k, s), z in zip(key, zs):
                term = term * (1 / (z - s) ** k)
            total = total + term
        return total


class SpectralCurve:
    """Local data of the one-cut curve around ``z = a`` (``a = +-1``)."""

    def __init__(self, curve: OneCutCurve):
        if not isinstance(curve.gamma, FormalScalar):
            raise TypeError("topological recursion needs an exact or formal curve")
        if curve.c != 0:
            raise ValueError("only centred curves (c = 0) are supported")
        self.curve = curve
        self.gamma = curve.gamma
        self.order = curve.gamma.order
        self.v = curve.v
        self._check()

    def zero(self):
        return FormalScalar.const(0, self.order) if self.order is not None else FormalScalar.rational(0)

    # Laurent polynomials in z stored as {exponent: coeff}
    def y_laurent(self):
        return {-k: vk for k, vk in enumerate(self.v) if k >= 1 and _nz(vk)}

    def w_laurent(self):
        out = {}
        for e, c in self.y_laurent().items():
            out[e] = out.get(e, 0) + c
            out[-e] = out.get(-e, 0) - c
        return out

    def x_laurent(self):
        return {1: self.gamma, -1: self.gamma}

    def _check(self):
        if _nz(self.v[0]):
            raise ValueError("resolvent has a z^0 term; curve is not centred")
        one = self.gamma * self.v[1]
        if one != 1:
            raise ValueError("normalization gamma * v_1 = 1 fails")
        w = self.w_laurent()
        for e, c in w.items():
            if w.get(-e, 0) != -c:
                raise ArithmeticError("w(1/z) = -w(z) fails")
        for a in (1, -1):
            val = sum((c * Fraction(a) ** e for e, c in w.items()), self.zero())
            dval = sum((c * e * Fraction(a) ** (e - 1) for e, c in w.items()), self.zero())
            if _nz(val):
                raise ArithmeticError("w does not vanish at a branch point")
            if dval[0] == 0:
                raise ArithmeticError("branch point is not simple at order 0")

    # local expansions ---------------------------------------------------
    def local(self, a: int, top: int) -> "_Local":
        return _Local(self, a, top)


class _Local:
    """Series in ``u = z - a`` needed by the recursion, up to ``u^top``."""

    def __init__(self, sc: SpectralCurve, a: int, top: int):
        self.sc = sc
        self.a = a
        self.top = top
        T = top + 6
        self.z = LSeries(0, [Fraction(a), Fraction(1)], None)
        self.invz = LSeries(0, [Fraction((-1) ** m * a ** (m + 1)) for m in range(T + 1)], T)
        self.eps = LSeries(1, self.invz.c[1:], T)
        self.invz2 = self.invz.mul(self.invz, top=T)
        self._pole = {}
        self._pull = {}
        # w(u) and x'(u)
        w = LSeries(0, [], T)
        for e, c in sc.w_laurent().items():
            w = w + self._zpow(e, T).scale(c)
        xp = (LSeries(0, [Fraction(1)], None) + (-self.invz2)).scale(sc.gamma)
        self.w = w
        self.xprime = xp
        wx = w.mul(xp, top=T)
        self.inv_wx = wx.inverse(top + 2)
        self._kern = {}

    def _zpow(self, e: int, T: int) -> LSeries:
        if e >= 0:
            coeffs = [Fraction(comb(e, i) * self.a ** (e - i)) for i in range(e + 1)]
            return LSeries(0, coeffs, None)
        p = LSeries(0, [Fraction(1)], None)
        for _ in range(-e):
            p = p.mul(self.invz, top=T)
        return p

    def pole(self, k: int, s: int) -> LSeries:
        """``1/(z - s)^k`` around ``z = a``."""
        key = (k, s)
        if key not in self._pole:
            if s == self.a:
                self._pole[key] = LSeries.monomial(-k)
            else:
                base = Fraction(2 * self.a)
                coeffs = [_binom(-k, m) * base ** (-k - m) for m in range(self.top + k + 5)]
                self._pole[key] = LSeries(0, coeffs, self.top + k + 4)
        return self._pole[key]

    def pulled_pole(self, k: int, s: int) -> LSeries:
        """``dz'/(z' - s)^k`` at ``z' = 1/z``, as a coefficient of ``dz``."""
        key = (k, s)
        if key not in self._pull:
            pref = Fraction(-((-s) ** k))
            if k >= 2:
                zp = self._zpow(k - 2, self.top)
            else:
                zp = self._zpow(k - 2, self.top + k + 4)
            self._pull[key] = self.pole(k, s).mul(zp, top=self.top + k + 4).scale(pref)
        return self._pull[key]

    def kernel(self, k: int) -> LSeries:
        """Coefficient of ``1/(z1 - a)^(k+1)`` in the recursion kernel."""
        if k not in self._kern:
            T = self.top + 4
            uk = LSeries.monomial(k)
            ek = LSeries(0, [Fraction(1)], None)
            for _ in range(k):
                ek = ek.mul(self.eps, top=T)
            num = (uk + (-ek)).scale(Fraction(1, 2))
            self._kern[k] = num.mul(self.inv_wx, top=self.top)
        return self._kern[k]

    def bergman_slot(self, pulled: bool):
        """``B(z or 1/z, zj)``: dict ``{(m+2, a): series}`` over ``m``."""
        out = {}
        T = self.top
        if not pulled:
            for m in range(T + 1):
                out[(m + 2, self.a)] = LSeries.monomial(m, Fraction(m + 1))
        else:
            p = LSeries(0, [Fraction(1)], None)
            for m in range(T + 1):
                if m > 0:
                    p = p.mul(self.eps, top=T)
                out[(m + 2, self.a)] = p.mul(self.invz2, top=T).scale(-(m + 1))
        return out

    def b_z_invz(self) -> LSeries:
        """``B(z, 1/z)`` as a coefficient of ``dz^2``: ``-u^-2 (2a + u)^-2``."""
        return self.pole(2, -self.a).shift(-2).scale(-1)


class TopologicalRecursion:
    """Memoized ``omega_{g,n}`` on a formal one-cut curve."""

    def __init__(self, curve: OneCutCurve, depth: int = 32):
        self.sc = SpectralCurve(curve)
        self.depth = depth
        self.memo = {}
        self._locals = {}

    # --------------------------------------------------------------- utilities
    def _local(self, a, top):
        key = (a, top)
        if key not in self._locals:
            self._locals[key] = self.sc.local(a, top)
        return self._locals[key]

    def _required_top(self, g, n):
        bounds = [2]
        if g >= 1:
            if g - 1 == 0 and n == 1:
                bounds.append(4)
            else:
                bounds.append(2 * pole_cap(g - 1, n + 1))
        for h in range(g + 1):
            for i in range(n):
                if (h == 0 and i == 0) or (h == g and i == n - 1):
                    continue
                ca = 0 if (h, i + 1) == (0, 2) else pole_cap(h, i + 1)
                cb = 0 if (g - h, n - i) == (0, 2) else pole_cap(g - h, n - i)
                bounds.append(ca + cb)
        return max(bounds) + 2

    def _specialize(self, form, loc, pulled):
        """Put ``z`` (or ``1/z``) in slot 0 of a stored form."""
        out = {}
        for key, c in form.items():
            k, s = key[0]
            ser = loc.pulled_pole(k, s) if pulled else loc.pole(k, s)
            rest = key[1:]
            term = ser.scale(c)
            out[rest] = out[rest] + term if rest in out else term
        return out

    def _specialize2(self, form, loc):
        """Slot 0 at ``z``, slot 1 at ``1/z``."""
        out = {}
        for key, c in form.items():
            (k0, s0), (k1, s1) = key[0], key[1]
            ser = loc.pole(k0, s0).mul(loc.pulled_pole(k1, s1), top=loc.top).scale(c)
            rest = key[2:]
            out[rest] = out[rest] + ser if rest in out else ser
        return out

    def _factor(self, h, m, loc, pulled):
        """``omega_{h, m}`` with its first slot at ``z`` or ``1/z``."""
        if (h, m) == (0, 2):
            return {(k,): s for k, s in loc.bergman_slot(pulled).items()}
        return self._specialize(self.omega(h, m), loc, pulled)

    # --------------------------------------------------------------- recursion
    def omega(self, g: int, n: int) -> CorrelatorForm:
        """``omega_{g,n}`` for ``2g - 2 + n >= 1``."""
        if 2 * g - 2 + n < 1:
            raise ValueError("omega_{g,n} is computed by the recursion only for 2g-2+n >= 1")
        if (g, n) in self.memo:
            return self.memo[(g, n)]
        top = self._required_top(g, n - 1)
        while top > self.depth:
            if self.depth * 2 > HARD_DEPTH_CAP:
                raise ArithmeticError(
                    f"series depth {top} needed for omega_{g},{n} exceeds cap {HARD_DEPTH_CAP}"
                )
            self.depth *= 2
        result = {}
        J = n - 1
        for a in (1, -1):
            loc = self._local(a, top)
            integrand = self._integrand(g, J, loc)
            for rest, ser in integrand.items():
                ser = ser.normalized()
                if not ser.c:
                    continue
                pmax = -ser.val
                for k in range(1, pmax + 3):
                    kern = loc.kernel(k)
                    r = _dot_residue(kern, ser)
                    if _nz(r):
                        key = ((k + 1, a),) + rest
                        result[key] = result[key] + r if key in result else r
        form = CorrelatorForm(g, n, result)
        cap = pole_cap(g, n)
        if form.max_pole() > cap:
            raise ArithmeticError(f"omega_{g},{n} has pole order {form.max_pole()} > {cap}")
        if not form.residue_free():
            raise ArithmeticError(f"omega_{g},{n} has a residue at a branch point")
        self.memo[(g, n)] = form
        return form

    def _integrand(self, g, J, loc):
        """``omega_{g-1,J+2}(z, 1/z, J) + sum' omega(z, I) omega(1/z, J minus I)``."""
        total = {}

        def add(rest, ser):
            total[rest] = total[rest] + ser if rest in total else ser

        if g >= 1:
            if g - 1 == 0 and J == 0:
                add((), loc.b_z_invz())
            else:
                for rest, ser in self._specialize2(self.omega(g - 1, J + 2), loc).items():
                    add(rest, ser)
        slots = list(range(J))
        for h in range(g + 1):
            for size in range(J + 1):
                if (h == 0 and size == 0) or (h == g and size == J):
                    continue
                for I in combinations(slots, size):
                    Ic = tuple(s for s in slots if s not in I)
                    A = self._factor(h, size + 1, loc, pulled=False)
                    B = self._factor(g - h, J - size + 1, loc, pulled=True)
                    for ra, sa in A.items():
                        for rb, sb in B.items():
                            key = [None] * J
                            for pos, kk in zip(I, ra):
                                key[pos] = kk
                            for pos, kk in zip(Ic, rb):
                                key[pos] = kk
                            add(tuple(key), sa.mul(sb, top=loc.top))
        return total

    # --------------------------------------------------------------- readout
    def x_power_coeffs(self, mu: int):
        """Laurent coefficients of ``x(z)^mu`` as ``{exponent: coeff}``."""
        g = self.sc.gamma ** mu
        return {mu - 2 * i: g * comb(mu, i) for i in range(mu + 1)}

    def _slot_coeff(self, k, s, mu):
        """``[z^-1] x(z)^mu (z - s)^-k`` expanded at infinity."""
        acc = self.sc.zero()
        for j, c in self.x_power_coeffs(mu).items():
            m = j + 1 - k
            if m >= 0:
                acc = acc + c * (comb(k + m - 1, m) * s**m)
        return acc

    def expand_to_W(self, form: CorrelatorForm, mu):
        """Coefficient of ``prod_i x_i^(-mu_i - 1)`` in ``W_{g,n}``."""
        mu = tuple(mu)
        if len(mu) != form.n:
            raise ValueError("need one order per slot")
        if any(m < 1 for m in mu):
            raise ValueError("orders must be >= 1")
        cache = {}
        total = self.sc.zero()
        for key, c in form.items():
            term = c
            for (k, s), m in zip(key, mu):
                ck = cache.get((k, s, m))
                if ck is None:
                    ck = cache[(k, s, m)] = self._slot_coeff(k, s, m)
                term = term * ck
            total = total + term
        return total

    def W(self, g: int, mu):
        """W-coefficient for any ``(g, n)``, including the unstable cases."""
        mu = tuple(mu)
        n = len(mu)
        if (g, n) == (0, 1):
            return self.W01(mu[0])
        if (g, n) == (0, 2):
            return self.W02(*mu)
        return self.expand_to_W(self.omega(g, n), mu)

    def W01(self, mu: int):
        """``[z^-1] x^mu y x'`` at infinity (``mu = 0`` gives the ``1/x`` term)."""
        y = self.sc.y_laurent()
        xp = {0: self.sc.gamma, -2: -self.sc.gamma}
        prod = {}
        for e1, c1 in y.items():
            for e2, c2 in xp.items():
                prod[e1 + e2] = prod.get(e1 + e2, 0) + c1 * c2
        acc = self.sc.zero()
        for j, c in self.x_power_coeffs(mu).items():
            if (-1 - j) in prod:
                acc = acc + c * prod[-1 - j]
        return acc

    def W02(self, mu1: int, mu2: int):
        """Large-x coefficients of ``dz1 dz2 / (z1 z2 - 1)^2``."""
        x1 = self.x_power_coeffs(mu1)
        x2 = self.x_power_coeffs(mu2)
        acc = self.sc.zero()
        for m in range(0, max(mu1, mu2) + 1):
            c1 = x1.get(m + 1)
            c2 = x2.get(m + 1)
            if c1 is not None and c2 is not None:
                acc = acc + (m + 1) * c1 * c2
        return acc

    def free_energy(self, g: int, shift=Fraction(0)):
        """``F_g = (1/(2-2g)) sum_a Res omega_{g,1} Phi`` for ``g >= 2``.

        ``Phi`` is the local primitive of ``y dx`` with constant ``shift``.
        """
        if g < 2:
            raise ValueError("free energy by residues needs g >= 2")
        form = self.omega(g, 1)
        total = self.sc.zero()
        pmax = form.max_pole()
        for a in (1, -1):
            loc = self._local(a, max(pmax + 2, 4))
            y = LSeries(0, [], loc.top + 2)
            for e, c in self.sc.y_laurent().items():
                y = y + loc._zpow(e, loc.top + 4).scale(c)
            phi = y.mul(loc.xprime, top=loc.top + 2).primitive()
            phi = phi + LSeries(0, [as_fraction(shift)], None)
            for key, c in form.items():
                (k, s), = key
                if s != a:
                    continue
                total = total + c * phi._get(k - 1)
        return total * Fraction(1, 2 - 2 * g)

    def recursion_kernel(self, z1, a: int, top: int = 12) -> LSeries:
        """``K_a(z1, a + u)`` as a Laurent series in ``u`` (coefficient of dz1/dz)."""
        loc = self._local(a, top)
        z1 = as_fraction(z1)
        acc = LSeries(-1, [], top)
        for k in range(1, top + 4):
            acc = acc + loc.kernel(k).scale(Fraction(1) / (z1 - a) ** (k + 1))
        return acc


def _dot_residue(kern: LSeries, ser: LSeries):
    """``Res_u kern * ser`` using only the coefficients that meet at ``u^-1``."""
    acc = Fraction(0)
    for i, x in enumerate(ser.c):
        e = ser.val + i
        if not _nz(x):
            continue
        y = kern[-1 - e] if (-1 - e) >= kern.val else Fraction(0)
        if _nz(y):
            acc = acc + x * y
    if ser.top is not None and ser.top < -1 - kern.val:
        raise ArithmeticError("integrand not deep enough for the residue")
    return acc


def quartic_curve(order: int) -> OneCutCurve:
    """Formal curve of ``V = x^2/2 - t x^4/4`` to order ``t^order``."""
    return solve_one_cut(formal_quartic(order), order)


def gaussian_curve() -> OneCutCurve:
    from .model import Potential

    return solve_one_cut(Potential.from_terms({2: 1}, "rational"), 0)
