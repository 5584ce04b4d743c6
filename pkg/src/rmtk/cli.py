"""Command-line entry point ``rmtk``.

Every subcommand writes one file (or stdout) that starts with a header
recording the version, subcommand, resolved parameters and seed: ``#``
comment lines for CSV, a ``"header"`` object for JSON.  Exit codes: 0 on
success, 1 when ``selftest`` fails, 2 on usage errors, 3 when the output
path cannot be written.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from itertools import combinations_with_replacement

import mpmath
import numpy as np

from . import __version__

SUBCOMMANDS = ("sample", "density", "spacing", "ortho", "gap", "tw", "maps", "toprec", "angular", "selftest")
DEFAULT_FORMAT = {
    "sample": "csv",
    "density": "csv",
    "spacing": "csv",
    "ortho": "json",
    "gap": "csv",
    "tw": "csv",
    "maps": "json",
    "toprec": "json",
    "angular": "json",
    "selftest": "csv",
}


class UsageError(Exception):
    def __init__(self, flag, message):
        super().__init__(f"argument {flag}: {message}")


class OutputError(Exception):
    pass


# ------------------------------------------------------------------ parsing
def _rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational value: {text!r}")


def _real(text):
    """Float, also accepting ``p/q``."""
    try:
        return float(Fraction(text.strip())) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid number: {text!r}")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _real_list(text):
    return [_real(v) for v in text.split(",")]


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed: {text!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--out", default="-", help="output path ('-' for stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = argparse.ArgumentParser(prog="rmtk", allow_abbrev=False, description="Random-matrix workbench.")
    parser.add_argument("--version", action="version", version=f"rmtk {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, parents=[common], allow_abbrev=False, help=help_)

    p = add("sample", "eigenvalues of Gaussian beta-ensemble or Wishart draws")
    p.add_argument("--ensemble", choices=("gaussian", "wishart"), default="gaussian")
    p.add_argument("--beta", type=int, choices=(1, 2, 4), default=2)
    p.add_argument("--size", type=int, default=100, help="matrix size N")
    p.add_argument("--p", type=int, default=None, help="Wishart column count (default N)")
    p.add_argument("--sigma2", type=_real, default=1.0)
    p.add_argument("--draws", type=int, default=1)
    p.add_argument("--histogram", type=int, default=0, metavar="BINS", help="emit center,density instead")
    p.add_argument("--range", type=_real_list, default=None, help="histogram range lo,hi")

    p = add("density", "equilibrium eigenvalue density on a grid")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--potential", help="potential JSON file")
    g.add_argument("--quartic-t", type=_rational, help="V = (x^2/2 - x^4/4)/t, t < 0")
    g.add_argument("--mp-u", type=_rational, help="Marchenko-Pastur law with ratio u")
    p.add_argument("--sigma2", type=_real, default=1.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--xmin", type=_real, default=None)
    p.add_argument("--xmax", type=_real, default=None)

    p = add("spacing", "unfolded bulk spacing histogram of Gaussian draws")
    p.add_argument("--beta", type=int, choices=(1, 2, 4), default=2)
    p.add_argument("--size", type=int, default=200)
    p.add_argument("--draws", type=int, default=100)
    p.add_argument("--bulk", type=_real, default=0.5)
    p.add_argument("--bins", type=int, default=30)
    p.add_argument("--s-max", type=_real, default=3.0)

    p = add("ortho", "recurrence coefficients, norms and partition functions")
    p.add_argument("--potential", help="potential JSON file (default Gaussian)")
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--dps", type=int, default=None)

    p = add("gap", "sine-kernel gap probability and spacing density")
    p.add_argument("--s-max", type=_real, default=3.0)
    p.add_argument("--points", type=int, default=61)
    p.add_argument("--m", type=int, default=64)

    p = add("tw", "Tracy-Widom beta=2 distribution")
    p.add_argument("--s-min", type=_real, default=-6.0)
    p.add_argument("--s-max", type=_real, default=4.0)
    p.add_argument("--points", type=int, default=51)
    p.add_argument("--m", type=int, default=64)

    p = add("maps", "exact genus expansion of connected Gaussian correlators")
    p.add_argument("--mu", type=_int_list, required=True)
    p.add_argument("--t-order", type=int, default=0)

    p = add("toprec", "W-coefficients from topological recursion on the quartic curve")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-order", type=int, default=2)
    p.add_argument("--mu", type=_int_list, default=None, help="one order tuple (default: all up to --mu-max)")
    p.add_argument("--mu-max", type=int, default=4)

    p = add("angular", "unitary angular integral, moments and Monte Carlo check")
    p.add_argument("--X", type=_real_list, required=True)
    p.add_argument("--Y", type=_real_list, required=True)
    p.add_argument("--mc-samples", type=int, default=100000)

    add("selftest", "fast invariant suite")
    return parser


# ----------------------------------------------------------------- encoding
def _rat(q):
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def _num(x):
    """JSON number for a float or mpf; out-of-range values become decimal strings."""
    if isinstance(x, mpmath.mpf):
        if x != 0 and abs(x) > mpmath.mpf("1e300"):
            return mpmath.nstr(x, 17)
        return float(x)
    return float(x)


def _param_value(v):
    if isinstance(v, Fraction):
        return _rat(v)
    if isinstance(v, list):
        return [_param_value(u) for u in v]
    return v


def _params(args):
    skip = {"command", "seed", "out", "format"}
    return {k: _param_value(v) for k, v in sorted(vars(args).items()) if k not in skip}


def _csv_cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 17)
    return str(v)


def render_csv(args, columns, rows, preamble=()):
    buf = io.StringIO()
    buf.write(f"# rmtk {__version__}\n")
    buf.write(f"# subcommand: {args.command}\n")
    buf.write(f"# params: {json.dumps(_params(args), sort_keys=True)}\n")
    buf.write(f"# seed: {args.seed}\n")
    for line in preamble:
        buf.write(line + "\n")
    if columns:
        buf.write(",".join(columns) + "\n")
    for row in rows:
        if isinstance(row, str):
            buf.write(row + "\n")
        else:
            buf.write(",".join(_csv_cell(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(args, body):
    header = {"version": __version__, "subcommand": args.command, "params": _params(args), "seed": args.seed}
    return json.dumps({"header": header, **body}, indent=2) + "\n"


# -------------------------------------------------------------- subcommands
def _positive(flag, value):
    if value < 1:
        raise UsageError(flag, "must be positive")


def _load_potential(path, flag="--potential"):
    from .model import Potential

    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        return Potential.from_json(text, "float")
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(flag, f"cannot read potential from {path!r}: {exc}")


def cmd_sample(args, fmt):
    from .model import EnsembleSpec
    from .sampling import histogram, sample_gaussian, sample_wishart

    _positive("--size", args.size)
    _positive("--draws", args.draws)
    if args.ensemble == "wishart":
        p = args.p if args.p is not None else args.size
        _positive("--p", p)
        if args.sigma2 <= 0:
            raise UsageError("--sigma2", "must be positive")
        spectra = [sample_wishart(p, args.size, args.sigma2, args.seed, d) for d in range(args.draws)]
    else:
        spec = EnsembleSpec(args.beta, args.size)
        spectra = [sample_gaussian(spec, args.seed, d) for d in range(args.draws)]
    if args.histogram:
        _positive("--histogram", args.histogram)
        pooled = np.concatenate([s.eigenvalues for s in spectra])
        rng = args.range
        if rng is None:
            rng = [float(pooled.min()), float(pooled.max())]
        if len(rng) != 2 or not rng[0] < rng[1]:
            raise UsageError("--range", "expected lo,hi with lo < hi")
        c, h = histogram(pooled, args.histogram, tuple(rng))
        if fmt == "json":
            return render_json(args, {"center": c.tolist(), "density": h.tolist()})
        return render_csv(args, ["center", "density"], zip(c, h))
    if fmt == "json":
        return render_json(args, {"spectra": [{"draw": s.draw, "eigenvalues": s.eigenvalues.tolist()} for s in spectra]})
    rows = []
    beta = args.beta if args.ensemble == "gaussian" else 1
    for s in spectra:
        rows.append("# beta,N,seed,draw")
        rows.append(f"# {beta},{args.size},{args.seed},{s.draw}")
        rows.extend((v,) for v in s.eigenvalues)
    return render_csv(args, [], rows)


def cmd_density(args, fmt):
    from .saddle import (
        NegativeDensityError,
        marchenko_pastur_density,
        marchenko_pastur_edges,
        quartic_potential,
        semicircle_density,
        solve_one_cut,
    )

    if args.points < 2:
        raise UsageError("--points", "need at least 2 points")
    if args.mp_u is not None:
        if args.mp_u < 1:
            raise UsageError("--mp-u", "the N x N law needs u = p/N >= 1")
        if args.sigma2 <= 0:
            raise UsageError("--sigma2", "must be positive")
        u = float(args.mp_u)
        hi, lo = marchenko_pastur_edges(u, args.sigma2)
        lo, hi = min(lo, hi), max(lo, hi)
        f = lambda x: marchenko_pastur_density(x, u, args.sigma2)
    else:
        if args.quartic_t is not None:
            if args.quartic_t >= 0:
                raise UsageError("--quartic-t", "needs t < 0 for a convergent weight")
            V = quartic_potential(float(args.quartic_t))
        elif args.potential is not None:
            V = _load_potential(args.potential)
        else:
            V = None
        if V is None:
            lo, hi, f = -2.0, 2.0, semicircle_density
        else:
            try:
                curve = solve_one_cut(V)
            except NegativeDensityError as exc:
                raise UsageError("--potential" if args.potential else "--quartic-t", str(exc))
            except ArithmeticError as exc:
                raise UsageError("--potential" if args.potential else "--quartic-t", f"no one-cut solution: {exc}")
            a, b = curve.edges
            lo, hi, f = b, a, curve.density
    pad = 0.05 * (hi - lo)
    xmin = args.xmin if args.xmin is not None else lo - pad
    xmax = args.xmax if args.xmax is not None else hi + pad
    if not xmin < xmax:
        raise UsageError("--xmax", "must exceed --xmin")
    x = np.linspace(xmin, xmax, args.points)
    rho = np.asarray(f(x), dtype=float)
    if fmt == "json":
        return render_json(args, {"x": x.tolist(), "rho": rho.tolist()})
    return render_csv(args, ["x", "rho"], zip(x, rho))


def cmd_spacing(args, fmt):
    from .model import EnsembleSpec
    from .sampling import histogram, sample_gaussian, unfold_spacings, wigner_surmise

    _positive("--size", args.size)
    _positive("--draws", args.draws)
    _positive("--bins", args.bins)
    if not 0 < args.bulk <= 1:
        raise UsageError("--bulk", "must be in (0, 1]")
    if args.s_max <= 0:
        raise UsageError("--s-max", "must be positive")
    spec = EnsembleSpec(args.beta, args.size)
    try:
        sp = np.concatenate(
            [unfold_spacings(sample_gaussian(spec, args.seed, d).eigenvalues, args.bulk).spacings for d in range(args.draws)]
        )
    except ValueError as exc:
        raise UsageError("--size", str(exc))
    c, h = histogram(sp, args.bins, (0.0, args.s_max))
    ws = wigner_surmise(args.beta, c)
    if fmt == "json":
        return render_json(args, {"center": c.tolist(), "density": h.tolist(), "surmise": ws.tolist(), "count": int(sp.size)})
    return render_csv(args, ["center", "density", "surmise"], zip(c, h, ws))


def cmd_ortho(args, fmt):
    from .model import Potential
    from .ortho import partition_function, recurrence_for

    _positive("--N", args.N)
    V = _load_potential(args.potential) if args.potential else Potential.gaussian()
    if args.dps is not None and args.dps < 15:
        raise UsageError("--dps", "must be at least 15")
    try:
        tab = recurrence_for(V, args.N + 1, args.dps)
    except ValueError as exc:
        raise UsageError("--potential", str(exc))
    N = args.N
    gamma = [_num(tab.gamma[k]) for k in range(N + 1)]
    S = [_num(tab.S[k]) for k in range(N + 1)]
    h = [_num(tab.h[k]) for k in range(N)]
    Z = [_num(partition_function(tab, n)) for n in range(1, N + 1)]
    if fmt == "json":
        return render_json(args, {"gamma": gamma, "S": S, "h": h, "ZN": Z})
    rows = [(k, gamma[k], S[k], h[k] if k < N else "", Z[k - 1] if k else "") for k in range(N + 1)]
    return render_csv(args, ["k", "gamma", "S", "h", "ZN"], rows)


def cmd_gap(args, fmt):
    from .fredholm import spacing_distribution

    if args.points < 5:
        raise UsageError("--points", "need at least 5 points")
    if args.s_max <= 0:
        raise UsageError("--s-max", "must be positive")
    if args.m < 2:
        raise UsageError("--m", "need at least 2 nodes")
    curve = spacing_distribution(np.linspace(0.0, args.s_max, args.points), args.m)
    if fmt == "json":
        return render_json(args, {"s": curve.s.tolist(), "E": curve.E.tolist(), "P": curve.P.tolist()})
    return render_csv(args, ["s", "E", "P"], zip(curve.s, curve.E, curve.P))


def cmd_tw(args, fmt):
    from .fredholm import tracy_widom_beta2

    if args.points < 2:
        raise UsageError("--points", "need at least 2 points")
    if args.s_min < -10:
        raise UsageError("--s-min", "must be >= -10")
    if not args.s_min < args.s_max:
        raise UsageError("--s-max", "must exceed --s-min")
    if args.m < 2:
        raise UsageError("--m", "need at least 2 nodes")
    s = np.linspace(args.s_min, args.s_max, args.points)
    F = tracy_widom_beta2(s, args.m)
    if fmt == "json":
        return render_json(args, {"s": s.tolist(), "F2": F.tolist()})
    return render_csv(args, ["s", "F2"], zip(s, F))


def cmd_maps(args, fmt):
    from .maps import connected_correlator_coeffs

    if any(m < 1 for m in args.mu):
        raise UsageError("--mu", "orders must be positive")
    if args.t_order < 0:
        raise UsageError("--t-order", "must be nonnegative")
    try:
        table = connected_correlator_coeffs(args.mu, args.t_order)
    except ValueError as exc:
        raise UsageError("--t-order", str(exc))
    rows = [(g, q, c.numerator, c.denominator) for (g, q), c in sorted(table.items())]
    if fmt == "json":
        body = {"mu": args.mu, "table": [{"g": g, "q": q, "coeff_num": n, "coeff_den": d} for g, q, n, d in rows]}
        return render_json(args, body)
    return render_csv(args, ["g", "q", "coeff_num", "coeff_den"], rows)


def cmd_toprec(args, fmt):
    from .toprec import TopologicalRecursion, quartic_curve

    if args.g < 0:
        raise UsageError("--g", "must be nonnegative")
    if args.n < 1:
        raise UsageError("--n", "must be positive")
    if args.t_order < 0:
        raise UsageError("--t-order", "must be nonnegative")
    if args.mu is not None:
        if len(args.mu) != args.n:
            raise UsageError("--mu", f"expected {args.n} orders")
        if any(m < 1 for m in args.mu):
            raise UsageError("--mu", "orders must be >= 1")
        tuples = [tuple(args.mu)]
    else:
        _positive("--mu-max", args.mu_max)
        tuples = list(combinations_with_replacement(range(1, args.mu_max + 1), args.n))
    rec = TopologicalRecursion(quartic_curve(args.t_order))
    rows = []
    for mu in tuples:
        w = rec.W(args.g, mu)
        for q in range(args.t_order + 1):
            c = Fraction(w[q])
            rows.append((args.g, args.n, list(mu), q, c.numerator, c.denominator))
    if fmt == "json":
        keys = ("g", "n", "mu", "q", "num", "den")
        return render_json(args, {"coefficients": [dict(zip(keys, r)) for r in rows]})
    return render_csv(args, ["g", "n", "mu", "q", "num", "den"], [(g, n, " ".join(map(str, mu)), q, a, b) for g, n, mu, q, a, b in rows])


def cmd_angular(args, fmt):
    from .angular import AngularProblem, hc_integral, mc_angular, morozov_moments

    if len(args.X) != len(args.Y):
        raise UsageError("--Y", "must have the same length as --X")
    if len(set(args.X)) != len(args.X):
        raise UsageError("--X", "entries must be pairwise distinct")
    if len(set(args.Y)) != len(args.Y):
        raise UsageError("--Y", "entries must be pairwise distinct")
    if args.mc_samples < 2:
        raise UsageError("--mc-samples", "need at least 2 samples")
    prob = AngularProblem(args.X, args.Y)
    Z = hc_integral(prob)
    est, se = mc_angular(prob, args.mc_samples, args.seed)
    M = morozov_moments(prob)
    if fmt == "json":
        return render_json(args, {"Z_formula": Z, "Z_mc": est, "stderr": se, "morozov": M.tolist()})
    rows = [("Z_formula", Z), ("Z_mc", est), ("stderr", se)]
    rows += [(f"morozov[{i}][{j}]", M[i, j]) for i in range(M.shape[0]) for j in range(M.shape[1])]
    return render_csv(args, ["quantity", "value"], rows)


def cmd_selftest(args, fmt):
    from .selftest import run_all

    lines = []
    ok = run_all(lines.append)
    if fmt == "json":
        text = render_json(args, {"passed": ok, "checks": lines})
    else:
        text = render_csv(args, [], lines)
    return text, ok


HANDLERS = {
    "sample": cmd_sample,
    "density": cmd_density,
    "spacing": cmd_spacing,
    "ortho": cmd_ortho,
    "gap": cmd_gap,
    "tw": cmd_tw,
    "maps": cmd_maps,
    "toprec": cmd_toprec,
    "angular": cmd_angular,
    "selftest": cmd_selftest,
}


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path!r}: {exc.strerror or exc}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or DEFAULT_FORMAT[args.command]
    try:
        result = HANDLERS[args.command](args, fmt)
        ok = True
        if isinstance(result, tuple):
            result, ok = result
        _write(args.out, result)
    except UsageError as exc:
        print(f"rmtk {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OutputError as exc:
        print(f"rmtk {args.command}: error: {exc}", file=sys.stderr)
        return 3
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
