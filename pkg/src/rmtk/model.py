"""Shared domain types: potentials, ensembles and exact scalar arithmetic.

``FormalScalar`` is either an exact rational (``order is None``) or a power
series in a single coupling ``t`` truncated after ``t**order``.  All
coefficients are :class:`fractions.Fraction`, so results are bit-exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

__all__ = [
    "FormalScalar",
    "Potential",
    "EnsembleSpec",
    "eval_potential",
    "series_newton",
    "as_fraction",
]


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class FormalScalar:
    """Exact rational or truncated power series in one coupling ``t``.

    Series of different truncation orders combine at the smaller order;
    rationals combine with anything without reducing the order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        if order is None:
            if len(coeffs) != 1:
                raise ValueError("an exact rational carries a single coefficient")
            self.coeffs = (as_fraction(coeffs[0]),)
        else:
            if order < 0:
                raise ValueError("truncation order must be >= 0")
            cs = [as_fraction(c) for c in coeffs[: order + 1]]
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
            self.coeffs = tuple(cs)
        self.order = order

    # constructors -------------------------------------------------------
    @classmethod
    def rational(cls, value) -> "FormalScalar":
        return cls((value,), None)

    @classmethod
    def const(cls, value, order: int) -> "FormalScalar":
        return cls((value,), order)

    @classmethod
    def coupling(cls, order: int) -> "FormalScalar":
        """The series ``t`` itself at the given truncation order."""
        return cls((0, 1), order)

    @property
    def kind(self) -> str:
        return "rational" if self.order is None else "series"

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(k)
        if self.order is None:
            return self.coeffs[0] if k == 0 else Fraction(0)
        if k > self.order:
            raise IndexError(f"coefficient t^{k} beyond truncation order {self.order}")
        return self.coeffs[k]

    # coercion -----------------------------------------------------------
    @staticmethod
    def _lift(other) -> "FormalScalar":
        if isinstance(other, FormalScalar):
            return other
        return FormalScalar.rational(other)

    @staticmethod
    def _common(a: "FormalScalar", b: "FormalScalar") -> int | None:
        if a.order is None:
            return b.order
        if b.order is None:
            return a.order
        return min(a.order, b.order)

    def _padded(self, order: int | None):
        if order is None:
            return self.coeffs
        if self.order is None:
            return (self.coeffs[0],) + (Fraction(0),) * order
        return self.coeffs[: order + 1]

    # ring operations ----------------------------------------------------
    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        p = self._common(self, other)
        a, b = self._padded(p), other._padded(p)
        return FormalScalar(tuple(x + y for x, y in zip(a, b)), p)

    __radd__ = __add__

    def __neg__(self):
        return FormalScalar(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        p = self._common(self, other)
        if self.order is None:
            c = self.coeffs[0]
            return FormalScalar(tuple(c * y for y in other._padded(p)), p)
        if other.order is None:
            c = other.coeffs[0]
            return FormalScalar(tuple(c * y for y in self._padded(p)), p)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (p + 1)
        for i in range(p + 1):
            ai = a[i]
            if ai:
                for j in range(p + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return FormalScalar(out, p)

    __rmul__ = __mul__

    def inverse(self) -> "FormalScalar":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with vanishing constant term is not invertible")
        if self.order is None:
            return FormalScalar.rational(1 / c0)
        p = self.order
        a = self.coeffs
        inv = [Fraction(0)] * (p + 1)
        inv[0] = 1 / c0
        for n in range(1, p + 1):
            s = sum((a[k] * inv[n - k] for k in range(1, n + 1)), Fraction(0))
            inv[n] = -s / c0
        return FormalScalar(inv, p)

    def __truediv__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = FormalScalar((1,), self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self) -> "FormalScalar":
        """Square root with positive rational leading coefficient."""
        c0 = self.coeffs[0]
        r0 = _rational_sqrt(c0)
        if self.order is None:
            return FormalScalar.rational(r0)
        p = self.order
        a = self.coeffs
        r = [Fraction(0)] * (p + 1)
        r[0] = r0
        for n in range(1, p + 1):
            s = sum((r[k] * r[n - k] for k in range(1, n)), Fraction(0))
            r[n] = (a[n] - s) / (2 * r0)
        return FormalScalar(r, p)

    def truncate(self, order: int) -> "FormalScalar":
        if self.order is not None and order > self.order:
            raise ValueError("cannot raise the truncation order")
        return FormalScalar(self._padded(order), order)

    # comparisons --------------------------------------------------------
    def __eq__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        p = self._common(self, other)
        return self._padded(p) == other._padded(p)

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        if self.order is not None and any(self.coeffs[1:]):
            raise TypeError("non-constant series has no float value")
        return float(self.coeffs[0])

    def __repr__(self):
        if self.order is None:
            return f"FormalScalar({self.coeffs[0]})"
        terms = [f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"FormalScalar({' + '.join(terms) or '0'} + O(t^{self.order + 1}))"


def _rational_sqrt(q: Fraction) -> Fraction:
    if q <= 0:
        raise ValueError("square root needs a positive leading coefficient")
    from math import isqrt

    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise ValueError(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


_KINDS = ("rational", "float", "series")


@dataclass(frozen=True)
class Potential:
    """Polynomial potential ``V(x) = sum_k t_k x**k / k`` for ``k >= 1``.

    ``t[i]`` holds ``t_{i+1}``; ``d = len(t) - 1`` is the degree of ``V'``.
    """

    t: tuple
    kind: str = "float"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown scalar kind {self.kind!r}")
        if not self.t:
            raise ValueError("empty potential")
        t = tuple(self._coerce(c) for c in self.t)
        if _is_zero(t[-1]):
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "t", t)

    def _coerce(self, c):
        if self.kind == "float":
            if isinstance(c, FormalScalar):
                raise TypeError("series coefficient in a float potential")
            return float(c)
        if self.kind == "rational":
            return as_fraction(c)
        if isinstance(c, FormalScalar):
            return c
        return FormalScalar.rational(c)

    @classmethod
    def from_terms(cls, terms: dict, kind: str = "float") -> "Potential":
        """Build from ``{k: t_k}``; missing powers are zero."""
        kmax = max(terms)
        zero = 0.0 if kind == "float" else 0
        return cls(tuple(terms.get(k, zero) for k in range(1, kmax + 1)), kind)

    @classmethod
    def gaussian(cls, kind: str = "float") -> "Potential":
        return cls.from_terms({2: 1}, kind)

    @property
    def degree(self) -> int:
        """Degree ``d`` of ``V'``."""
        return len(self.t) - 1

    def coupling(self, k: int):
        if 1 <= k <= len(self.t):
            return self.t[k - 1]
        return self._coerce(0)

    def derivative_coeffs(self) -> tuple:
        """Ascending coefficients of the polynomial ``V'``."""
        return self.t

    def is_even(self) -> bool:
        return all(_is_zero(c) for c in self.t[0::2])

    def scaled(self, factor) -> "Potential":
        """The potential ``factor * V`` (used for N-scaled weights)."""
        return Potential(tuple(c * factor for c in self.t), self.kind)

    def __call__(self, x):
        return eval_potential(self, x)

    def derivative(self, x):
        _check_ring(self, x)
        acc = self.t[-1]
        for c in reversed(self.t[:-1]):
            acc = acc * x + c
        return acc

    # JSON --------------------------------------------------------------
    def to_json(self) -> str:
        entries = []
        for k, c in enumerate(self.t, start=1):
            if self.kind == "series":
                raise TypeError("series potentials are not serializable")
            q = Fraction(c) if self.kind == "rational" else Fraction(c).limit_denominator(10**15)
            if self.kind == "float" and float(q) != c:
                q = Fraction(c)
            entries.append({"k": k, "numerator": q.numerator, "denominator": q.denominator})
        return json.dumps(entries)

    @classmethod
    def from_json(cls, text: str, kind: str = "rational") -> "Potential":
        entries = json.loads(text)
        terms = {int(e["k"]): Fraction(int(e["numerator"]), int(e["denominator"])) for e in entries}
        if kind == "float":
            terms = {k: float(v) for k, v in terms.items()}
        return cls.from_terms(terms, kind)


def _is_zero(c) -> bool:
    if isinstance(c, FormalScalar):
        return c.is_zero()
    return c == 0


def _check_ring(V: Potential, x) -> None:
    if V.kind == "float":
        if isinstance(x, FormalScalar):
            raise TypeError("formal series evaluated in a float potential")
    elif V.kind == "rational":
        if isinstance(x, FormalScalar) or isinstance(x, float):
            raise TypeError(f"{type(x).__name__} evaluated in a rational potential")
        if not isinstance(x, (int, Fraction)):
            raise TypeError(f"{type(x).__name__} evaluated in a rational potential")
    else:
        if isinstance(x, float):
            raise TypeError("float evaluated in a series potential")


def eval_potential(V: Potential, x):
    """``V(x)`` by Horner's rule in the scalar ring of ``V``."""
    _check_ring(V, x)
    acc = V.t[-1] / len(V.t) if V.kind == "float" else V.t[-1] * Fraction(1, len(V.t))
    for k in range(len(V.t) - 1, 0, -1):
        c = V.t[k - 1]
        acc = acc * x + (c / k if V.kind == "float" else c * Fraction(1, k))
    return acc * x


@dataclass(frozen=True)
class EnsembleSpec:
    """Gaussian ensemble with weight ``exp(-(N*beta/4) Tr M^2)``."""

    beta: int
    N: int

    def __post_init__(self):
        if self.beta not in (1, 2, 4):
            raise ValueError(f"beta must be 1, 2 or 4, got {self.beta}")
        if self.N < 1:
            raise ValueError("N must be positive")


def series_newton(
    F: Callable[[FormalScalar], FormalScalar], u0, order: int
) -> FormalScalar:
    """Solve ``F(u) = 0`` order by order in the coupling, starting at ``u0``.

    The derivative at order zero is read off exactly from the linear
    response of ``F`` to shifting ``u`` by ``t``.  Each chord step fixes one
    more order, so ``order + 1`` steps are exact.
    """
    u0 = as_fraction(u0)
    if order == 0:
        u = FormalScalar.const(u0, 0)
        if F(u)[0] != 0:
            raise ValueError("F(u0) does not vanish at order 0")
        return u
    base = FormalScalar.const(u0, order)
    f0 = F(base)
    if f0[0] != 0:
        raise ValueError("F(u0) does not vanish at order 0")
    t = FormalScalar.coupling(order)
    slope = F(base + t)[1] - f0[1]
    if slope == 0:
        raise ZeroDivisionError("dF/du is not invertible at order 0")
    u = base
    for _ in range(order + 1):
        u = u - F(u) * Fraction(1) / slope
    if not F(u).is_zero():
        raise ArithmeticError("series Newton failed to converge")
    return u


def parse_scalar_list(values: Sequence[str]) -> list[Fraction]:
    return [as_fraction(v) for v in values]
