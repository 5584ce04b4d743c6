# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: dense symmetric eigenvalues and Wick matching enumeration."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot, copysign

cnp.import_array()


def tridiagonalize(double[:, ::1] a):
    """Householder reduction of a symmetric matrix (overwritten) to (d, e)."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k, i, j
    cdef double alpha, norm, vnorm, kv, s
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0))
    cdef double[::1] dd = d
    cdef double[::1] ee = e
    cdef double[::1] v = np.zeros(n)
    cdef double[::1] p = np.zeros(n)
    for k in range(n - 2):
        norm = 0.0
        for i in range(k + 1, n):
            norm += a[i, k] * a[i, k]
        norm = sqrt(norm)
        dd[k] = a[k, k]
        if norm == 0.0:
            ee[k] = 0.0
            continue
        alpha = -copysign(norm, a[k + 1, k])
        vnorm = 0.0
        for i in range(k + 1, n):
            v[i] = a[i, k]
        v[k + 1] -= alpha
        for i in range(k + 1, n):
            vnorm += v[i] * v[i]
        vnorm = sqrt(vnorm)
        ee[k] = alpha
        if vnorm == 0.0:
            continue
        for i in range(k + 1, n):
            v[i] /= vnorm
        # p = A v on the trailing block, using the lower triangle only
        for i in range(k + 1, n):
            p[i] = 0.0
        for i in range(k + 1, n):
            s = a[i, i] * v[i]
            for j in range(k + 1, i):
                s += a[i, j] * v[j]
                p[j] += a[i, j] * v[i]
            p[i] += s
        kv = 0.0
        for i in range(k + 1, n):
            kv += v[i] * p[i]
        for i in range(k + 1, n):
            p[i] -= kv * v[i]
        for i in range(k + 1, n):
            for j in range(k + 1, i + 1):
                a[i, j] -= 2.0 * (v[i] * p[j] + p[i] * v[j])
    if n >= 2:
        dd[n - 2] = a[n - 2, n - 2]
        ee[n - 2] = a[n - 1, n - 2]
    if n >= 1:
        dd[n - 1] = a[n - 1, n - 1]
    return d, e


def tql_eigenvalues(double[::1] d, double[::1] e_in, int max_iter=60):
    """Implicit-shift QL on a symmetric tridiagonal matrix; returns sorted eigenvalues."""
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t l, m, i, it
    cdef double g, r, s, c, p, f, b, dd_
    out = np.array(d, dtype=np.float64, copy=True)
    cdef double[::1] w = out
    cdef double[::1] e = np.zeros(n)
    for i in range(n - 1):
        e[i] = e_in[i]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd_ = fabs(w[m]) + fabs(w[m + 1])
                if fabs(e[m]) <= 2.220446049250313e-16 * dd_:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise ArithmeticError("QL iteration did not converge")
            g = (w[l + 1] - w[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = w[m] - w[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    w[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = w[i + 1] - p
                r = (w[i] - g) * s + 2.0 * c * b
                p = s * r
                w[i + 1] = g + p
                g = c * r - b
                i -= 1
            if r == 0.0 and i >= l:
                continue
            w[l] -= p
            e[l] = g
            e[m] = 0.0
    out.sort()
    return out


cdef int _find(int[::1] parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef void _leaf(int[::1] match, int[::1] nxt, int[::1] vert, int nverts,
                int[::1] seen, int[::1] parent, long long[:, ::1] counts) nogil:
    cdef int m = match.shape[0]
    cdef int h, start, faces = 0, comps, ra, rb, i
    for i in range(m):
        seen[i] = 0
    for start in range(m):
        if seen[start]:
            continue
        faces += 1
        h = start
        while not seen[h]:
            seen[h] = 1
            h = nxt[match[h]]
    for i in range(nverts):
        parent[i] = i
    comps = nverts
    for i in range(m):
        ra = _find(parent, vert[i])
        rb = _find(parent, vert[match[i]])
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    counts[faces, 1 if comps == 1 else 0] += 1


cdef void _recurse(int[::1] match, int[::1] nxt, int[::1] vert, int nverts,
                   int[::1] seen, int[::1] parent, long long[:, ::1] counts) nogil:
    cdef int m = match.shape[0]
    cdef int i = 0, j
    while i < m and match[i] >= 0:
        i += 1
    if i == m:
        _leaf(match, nxt, vert, nverts, seen, parent, counts)
        return
    for j in range(i + 1, m):
        if match[j] < 0:
            match[i] = j
            match[j] = i
            _recurse(match, nxt, vert, nverts, seen, parent, counts)
            match[i] = -1
            match[j] = -1


def wick_face_counts(nxt_in, vert_in, int nverts):
    """Histogram of perfect matchings by (face count, connected?).

    ``nxt`` is the rotation on half-edges and ``vert`` the owning vertex.
    Faces are cycles of ``nxt . match``.
    """
    cdef int[::1] nxt = np.ascontiguousarray(nxt_in, dtype=np.intc)
    cdef int[::1] vert = np.ascontiguousarray(vert_in, dtype=np.intc)
    cdef int m = nxt.shape[0]
    counts = np.zeros((m + 1, 2), dtype=np.int64)
    if m % 2:
        return counts
    cdef long long[:, ::1] cv = counts
    cdef int[::1] match = np.full(m, -1, dtype=np.intc)
    cdef int[::1] seen = np.zeros(m, dtype=np.intc)
    cdef int[::1] parent = np.zeros(max(nverts, 1), dtype=np.intc)
    with nogil:
        _recurse(match, nxt, vert, nverts, seen, parent, cv)
    return counts
