"""Fast invariant suite behind ``rmtk selftest``.

Each check returns ``(ok, detail)``; ``run_all`` prints one line per check.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np

from .fredholm import KernelSpec, fredholm_det, sine_gap
from .maps import TraceWord, gaussian_moment
from .model import FormalScalar, Potential
from .ortho import (
    RecurrenceTable,
    banded_power_entry,
    hankel_partition,
    motzkin_paths,
    motzkin_terms,
    partition_function,
    recurrence_for,
    string_equation_residual,
)
from .saddle import gamma_squared_series, quartic_one_cut_gamma2, quartic_potential, solve_one_cut


def check_wick() -> tuple:
    """``<N Tr M^4> = 2 N^2 + 1`` as an exact Laurent polynomial."""
    poly = gaussian_moment(TraceWord((4,)))
    # <Tr M^4> = 2N + 1/N under exp(-N Tr M^2 / 2)
    scaled = {e + 1: c for e, c in poly.items()}
    ok = scaled == {2: 2, 0: 1}
    shown = " + ".join(f"{c} N^{e}" if e else f"{c}" for e, c in sorted(scaled.items(), reverse=True))
    return ok, f"<N Tr M^4> = {shown}"


def check_quartic_gamma2() -> tuple:
    g2 = gamma_squared_series(3)
    t = FormalScalar.coupling(3)
    series_ok = [g2[k] for k in range(4)] == [1, 3, 18, 135] and g2 == 1 + 3 * t * g2 * g2
    curve = solve_one_cut(quartic_potential(-0.5))
    err = abs(curve.gamma**2 - quartic_one_cut_gamma2(-0.5))
    closed = abs(quartic_one_cut_gamma2(-0.5) - (1 + math.sqrt(7)) / 6)
    ok = series_ok and err < 1e-12 and closed < 1e-15
    return ok, f"series {[str(g2[k]) for k in range(4)]}, |gamma^2 - closed form| = {err:.1e} at t = -1/2"


def check_orthopoly() -> tuple:
    gauss = recurrence_for(Potential.gaussian(), 24)
    e_gauss = max(max(abs(float(gauss.S[k])) for k in range(21)), max(abs(float(gauss.gamma[k]) - math.sqrt(k)) for k in range(1, 21)))
    V = Potential.from_terms({2: -1.0, 4: 1.0})
    quartic = recurrence_for(V, 16)
    e_string = max(max(abs(float(r)) for r in string_equation_residual(V, quartic, k)) for k in range(1, 11))
    e_hankel = max(abs(float(partition_function(quartic, N) / hankel_partition(quartic.moments, N)) - 1) for N in range(1, 9))
    ok = e_gauss < 1e-10 and e_string < 1e-8 and e_hankel < 1e-10
    return ok, f"Gaussian {e_gauss:.1e}, string {e_string:.1e}, Hankel {e_hankel:.1e}"


def check_motzkin() -> tuple:
    rng = np.random.default_rng(5)
    gam = [Fraction(0)] + [Fraction(int(v), 7) for v in rng.integers(1, 20, 14)]
    S = [Fraction(int(v), 5) for v in rng.integers(-9, 10, 14)]
    tab = RecurrenceTable.from_gamma(gam, S)
    exact = all(
        motzkin_paths(tab, k, k, m) == banded_power_entry(tab, m, k, k) for k in range(6) for m in range(9)
    )
    terms = dict(motzkin_terms(tab, 0, 0, 3))
    expected = {
        "FFF": [("S", 0)] * 3,
        "UDF": [("gamma", 1), ("gamma", 1), ("S", 0)],
        "FUD": [("S", 0), ("gamma", 1), ("gamma", 1)],
        "UFD": [("gamma", 1), ("S", 1), ("gamma", 1)],
    }
    ok = exact and terms == expected
    return ok, f"paths == banded powers: {exact}; (Q^3)_00 decomposition: {sorted(terms)}"


def check_fredholm() -> tuple:
    conv = max(abs(sine_gap(s, 64) - sine_gap(s, 128)) for s in np.linspace(0.25, 4, 16))
    f = lambda x: np.exp(x)
    g = lambda y: np.cos(y)
    det = fredholm_det(KernelSpec(lambda x, y: f(x) * g(y), 0.0, 1.0, 32))
    # int_0^1 e^t cos t dt = (e (cos 1 + sin 1) - 1) / 2
    exact = 1 - (math.e * (math.cos(1) + math.sin(1)) - 1) / 2
    ok = conv < 1e-8 and abs(det - exact) < 1e-12
    return ok, f"|E_64 - E_128| = {conv:.1e}, rank-one error {abs(det - exact):.1e}"


CHECKS = [
    ("1 wick", check_wick),
    ("3 quartic-gamma2", check_quartic_gamma2),
    ("4 orthopoly", check_orthopoly),
    ("5 motzkin", check_motzkin),
    ("8 fredholm", check_fredholm),
]


def run_all(emit=print) -> bool:
    """Run every check; returns ``True`` when all pass."""
    all_ok = True
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, reported like one
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        emit(f"{'PASS' if ok else 'FAIL'} criterion {name} ({time.perf_counter() - t0:.2f}s): {detail}")
    return all_ok
