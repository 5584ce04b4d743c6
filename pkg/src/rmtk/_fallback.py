"""Pure-Python versions of the compiled kernels in ``_core``.

Same signatures and results; used when the extension is not built.
"""
import math

import numpy as np


def tridiagonalize(a):
    """Householder reduction of a symmetric matrix (overwritten) to (d, e)."""
    n = a.shape[0]
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        norm = np.linalg.norm(x)
        d[k] = a[k, k]
        if norm == 0.0:
            continue
        alpha = -math.copysign(norm, x[0])
        e[k] = alpha
        x[0] -= alpha
        vnorm = np.linalg.norm(x)
        if vnorm == 0.0:
            continue
        v = x / vnorm
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        p -= (v @ p) * v
        sub -= 2.0 * (np.outer(v, p) + np.outer(p, v))
    if n >= 2:
        d[n - 2] = a[n - 2, n - 2]
        e[n - 2] = a[n - 1, n - 2]
    if n >= 1:
        d[n - 1] = a[n - 1, n - 1]
    return d, e


def tql_eigenvalues(d, e_in, max_iter=60):
    """Implicit-shift QL on a symmetric tridiagonal matrix; returns sorted eigenvalues."""
    w = [float(x) for x in d]
    n = len(w)
    e = [float(x) for x in e_in[: n - 1]] + [0.0]
    eps = 2.220446049250313e-16
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(w[m]) + abs(w[m + 1])):
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise ArithmeticError("QL iteration did not converge")
            g = (w[l + 1] - w[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = w[m] - w[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    w[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = w[i + 1] - p
                r = (w[i] - g) * s + 2.0 * c * b
                p = s * r
                w[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            w[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.sort(np.array(w))


def wick_face_counts(nxt, vert, nverts):
    """Histogram of perfect matchings by (face count, connected?)."""
    nxt = [int(x) for x in nxt]
    vert = [int(x) for x in vert]
    m = len(nxt)
    counts = np.zeros((m + 1, 2), dtype=np.int64)
    if m % 2:
        return counts
    match = [-1] * m

    def leaf():
        seen = [False] * m
        faces = 0
        for start in range(m):
            if seen[start]:
                continue
            faces += 1
            h = start
            while not seen[h]:
                seen[h] = True
                h = nxt[match[h]]
        parent = list(range(nverts))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = nverts
        for i in range(m):
            ra, rb = find(vert[i]), find(vert[match[i]])
            if ra != rb:
                parent[ra] = rb
                comps -= 1
        counts[faces, 1 if comps == 1 else 0] += 1

    def recurse():
        try:
            i = match.index(-1)
        except ValueError:
            leaf()
            return
        for j in range(i + 1, m):
            if match[j] < 0:
                match[i] = j
                match[j] = i
                recurse()
                match[i] = match[j] = -1

    recurse()
    return counts
