"""Exact Gaussian matrix integrals by Wick enumeration over labeled half-edges.

Conventions: Hermitian N x N matrices with weight ``exp(-N Tr M^2 / 2)``, so
each Wick pairing (edge) carries ``1/N`` and each face a factor ``N``.  The
quartic coupling enters through ``exp(N t Tr M^4 / 4)``; the ``q``-th order
term contributes ``(N t / 4)^q / q!``.

A matching of the labeled half-edges is a ribbon graph; its faces are the
cycles of ``rotation . matching``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from ._kernels import wick_face_counts
from .model import FormalScalar, as_fraction

__all__ = [
    "MAX_HALF_EDGES",
    "TraceWord",
    "GenusPolynomial",
    "gaussian_moment",
    "connected_correlator_coeffs",
    "connected_series",
    "vacuum_genus_coeffs",
    "heine_oracle",
    "cumulant_check",
    "genus_bound",
]

MAX_HALF_EDGES = 18
MAX_HEINE_SIZE = 4


@dataclass(frozen=True)
class TraceWord:
    """Marked trace degrees ``mu`` plus ``q`` quartic vertices."""

    mu: tuple
    q: int = 0

    def __post_init__(self):
        mu = tuple(int(m) for m in self.mu)
        if any(m < 1 for m in mu):
            raise ValueError("trace degrees must be positive")
        if self.q < 0:
            raise ValueError("q must be nonnegative")
        object.__setattr__(self, "mu", mu)

    @property
    def degrees(self) -> tuple:
        return self.mu + (4,) * self.q

    @property
    def half_edges(self) -> int:
        return sum(self.degrees)

    @property
    def n_vertices(self) -> int:
        return len(self.mu) + self.q


class GenusPolynomial(dict):
    """Laurent polynomial in N stored as ``{exponent: Fraction}``."""

    def __init__(self, data=None):
        super().__init__()
        for e, c in (data or {}).items():
            c = Fraction(c)
            if c:
                self[int(e)] = c

    def __call__(self, N):
        N = as_fraction(N)
        return sum((c * N**e for e, c in self.items()), Fraction(0))

    def __add__(self, other):
        out = dict(self)
        for e, c in other.items():
            out[e] = out.get(e, Fraction(0)) + c
        return GenusPolynomial(out)

    def __mul__(self, other):
        if not isinstance(other, GenusPolynomial):
            return GenusPolynomial({e: c * other for e, c in self.items()})
        out = {}
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return GenusPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self):
        terms = " + ".join(f"{c}*N^{e}" for e, c in sorted(self.items(), reverse=True))
        return f"GenusPolynomial({terms or '0'})"


def _ribbon(degrees):
    """Rotation and vertex labels for a list of vertex degrees."""
    nxt, vert = [], []
    base = 0
    for v, d in enumerate(degrees):
        for j in range(d):
            nxt.append(base + (j + 1) % d)
            vert.append(v)
        base += d
    return np.array(nxt, dtype=np.intc), np.array(vert, dtype=np.intc)


def _face_histogram(word: TraceWord):
    m = word.half_edges
    if m > MAX_HALF_EDGES:
        raise ValueError(
            f"{m} half-edges exceeds the enumeration cap of {MAX_HALF_EDGES}"
        )
    if m == 0:
        counts = np.zeros((1, 2), dtype=np.int64)
        counts[0, 1 if word.n_vertices == 1 else 0] = 1
        return counts
    nxt, vert = _ribbon(word.degrees)
    return wick_face_counts(nxt, vert, word.n_vertices)


def gaussian_moment(word: TraceWord, connected: bool = False) -> GenusPolynomial:
    """``<prod Tr M^mu_i (Tr M^4)^q>`` as a Laurent polynomial in N.

    Every matching contributes ``N^(faces - edges)``; no coupling constants
    or ``1/q!`` factors are applied here.  With ``connected=True`` only
    matchings whose vertex graph is connected are kept.
    """
    counts = _face_histogram(word)
    edges = word.half_edges // 2
    cols = [1] if connected else [0, 1]
    poly = {}
    for faces in range(counts.shape[0]):
        c = int(sum(counts[faces, j] for j in cols))
        if c:
            poly[faces - edges] = poly.get(faces - edges, 0) + c
    return GenusPolynomial(poly)


def connected_correlator_coeffs(mu, t_order: int) -> dict:
    """Coefficients of ``prod x_i^(-mu_i-1)`` in ``W_{g,n}`` at order ``t^q``.

    Returns ``{(g, q): Fraction}`` for ``q <= t_order``; vanishing entries are
    omitted.  ``n = len(mu)`` and the N-grading is ``N^(2-2g-n)``.
    """
    mu = tuple(int(m) for m in mu)
    n = len(mu)
    table = {}
    for q in range(t_order + 1):
        word = TraceWord(mu, q)
        if word.half_edges % 2:
            continue
        poly = gaussian_moment(word, connected=True)
        pref = Fraction(1, 4**q * factorial(q))
        for e, c in poly.items():
            chi = e + q  # one factor N per quartic vertex
            twice_g = 2 - n - chi
            if twice_g % 2:
                raise ArithmeticError("odd Euler characteristic")
            table[(twice_g // 2, q)] = table.get((twice_g // 2, q), Fraction(0)) + pref * c
    return {k: v for k, v in table.items() if v}


def connected_series(mu, g: int, t_order: int) -> FormalScalar:
    """The genus-``g`` coefficient as a truncated series in ``t``."""
    table = connected_correlator_coeffs(mu, t_order)
    return FormalScalar([table.get((g, q), 0) for q in range(t_order + 1)], t_order)


def vacuum_genus_coeffs(q: int) -> dict:
    """Genus-graded connected vacuum maps with ``q`` quartic vertices.

    Returns ``{g: (1/q!)(1/4)^q * #connected matchings of genus g}``, the
    ``t^q`` coefficient of ``F_g`` in ``log Z = sum_g N^(2-2g) F_g``.
    """
    if q < 1:
        raise ValueError("q must be positive")
    poly = gaussian_moment(TraceWord((), q), connected=True)
    pref = Fraction(1, 4**q * factorial(q))
    out = {}
    for e, c in poly.items():
        chi = e + q
        out[(2 - chi) // 2] = pref * c
    return out


def _elementary_in_power_sums(k: int):
    """``e_j`` as polynomials in power sums, via Newton's identities.

    Each ``e_j`` is ``{sorted tuple of power-sum degrees: Fraction}``.
    """
    e = [{(): Fraction(1)}]
    for j in range(1, k + 1):
        acc = {}
        for i in range(1, j + 1):
            sign = 1 if i % 2 else -1
            for mono, c in e[j - i].items():
                key = tuple(sorted(mono + (i,)))
                acc[key] = acc.get(key, Fraction(0)) + sign * c / j
        e.append({m: c for m, c in acc.items() if c})
    return e


def heine_oracle(k: int, lam):
    """``<det(lam - M)>`` over k x k Hermitian matrices with weight ``exp(-Tr M^2/2)``.

    Each trace monomial is evaluated by Wick's theorem with unit propagator,
    i.e. ``sum over matchings of k^faces``.  Returns the value at ``lam``
    when ``lam`` is rational, or the ascending coefficient list when
    ``lam is None``.
    """
    if k < 0 or k > MAX_HEINE_SIZE:
        raise ValueError(f"k must be in 0..{MAX_HEINE_SIZE}")
    e = _elementary_in_power_sums(k)
    coeffs = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        val = Fraction(0)
        for mono, c in e[j].items():
            word = TraceWord(mono, 0)
            if word.half_edges % 2:
                continue
            poly = gaussian_moment(word)
            edges = word.half_edges // 2
            # rescale propagator 1/N -> 1: multiply by N^edges, evaluate at N = k
            val += c * sum(cc * Fraction(k) ** (ex + edges) for ex, cc in poly.items())
        coeffs[k - j] = (-1) ** j * val
    if lam is None:
        return coeffs
    lam = as_fraction(lam)
    return sum((c * lam**i for i, c in enumerate(coeffs)), Fraction(0))


def cumulant_check(mu) -> bool:
    """Moment-cumulant identity for a word: full = sum over set partitions."""
    mu = tuple(mu)
    full = gaussian_moment(TraceWord(mu))
    total = GenusPolynomial()
    for blocks in _set_partitions(list(range(len(mu)))):
        term = GenusPolynomial({0: 1})
        for b in blocks:
            w = TraceWord(tuple(mu[i] for i in b))
            if w.half_edges % 2:
                term = GenusPolynomial()
                break
            term = term * gaussian_moment(w, connected=True)
        total = total + term
    return dict(total) == dict(full)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def genus_bound(word: TraceWord) -> int:
    """Largest genus allowed by ``F >= 1`` for a connected graph."""
    E = word.half_edges // 2
    V = word.n_vertices
    return (E - V + 1) // 2

