"""Backend selection for the hot loops.

The compiled ``_core`` extension is used when importable, otherwise the
pure-Python ``_fallback``.  ``set_backend`` switches explicitly (parity tests
and the benchmark use it).
"""
from . import _fallback

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

_impl = _core if _core is not None else _fallback
BACKEND = "compiled" if _core is not None else "python"


def set_backend(name):
    """Select ``"compiled"`` or ``"python"``; returns the previous name."""
    global _impl, BACKEND
    if name == "compiled":
        if _core is None:
            raise RuntimeError("compiled kernels are not built")
        new = _core
    elif name == "python":
        new = _fallback
    else:
        raise ValueError(f"unknown backend {name!r}")
    prev = BACKEND
    _impl, BACKEND = new, name
    return prev


def compiled_available():
    return _core is not None


def tridiagonalize(a):
    return _impl.tridiagonalize(a)


def tql_eigenvalues(d, e):
    return _impl.tql_eigenvalues(d, e)


def wick_face_counts(nxt, vert, nverts):
    return _impl.wick_face_counts(nxt, vert, nverts)
