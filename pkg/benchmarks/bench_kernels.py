"""Compiled vs pure-Python kernels: eigensolver and Wick enumeration.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import timeit

import numpy as np

from rmtk import _kernels
from rmtk.maps import TraceWord, gaussian_moment
from rmtk.sampling import eigenvalues_symmetric


def _eigen_case(n):
    a = np.random.default_rng(n).standard_normal((n, n))
    a = a + a.T
    return f"eigen n={n}", lambda: eigenvalues_symmetric(a)


def _wick_case(mu, q):
    word = TraceWord(mu, q)
    return f"wick mu={mu} q={q}", lambda: gaussian_moment(word)


CASES = [_eigen_case(n) for n in (50, 100, 200, 400)] + [_wick_case((4,), 1), _wick_case((4, 4), 1), _wick_case((2, 2), 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["compiled"] if _kernels.compiled_available() else [])
    print(f"{'case':28s}" + "".join(f"{b:>14s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    prev = _kernels.BACKEND
    try:
        for name, fn in CASES:
            times = []
            for b in backends:
                _kernels.set_backend(b)
                fn()
                times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
            row = f"{name:28s}" + "".join(f"{t * 1e3:12.2f}ms" for t in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:11.1f}x"
            print(row)
    finally:
        _kernels.set_backend(prev)


if __name__ == "__main__":
    main()
