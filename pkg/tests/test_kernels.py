import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmtk import _fallback, _kernels
from rmtk.maps import TraceWord, _ribbon, gaussian_moment
from rmtk.sampling import eigenvalues_symmetric

compiled = pytest.mark.skipif(not _kernels.compiled_available(), reason="compiled kernels not built")


def test_backend_switch():
    prev = _kernels.set_backend("python")
    try:
        assert _kernels.BACKEND == "python"
        with pytest.raises(ValueError):
            _kernels.set_backend("fortran")
    finally:
        _kernels.set_backend(prev)
    assert _kernels.BACKEND == prev


@compiled
@settings(max_examples=20, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32))
def test_eigen_parity(n, seed):
    from rmtk import _core

    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    a = np.ascontiguousarray(a + a.T)
    d1, e1 = _core.tridiagonalize(a.copy())
    d2, e2 = _fallback.tridiagonalize(a.copy())
    assert np.allclose(d1, d2, atol=1e-12) and np.allclose(np.abs(e1), np.abs(e2), atol=1e-12)
    ev1 = np.asarray(_core.tql_eigenvalues(np.array(d1), np.array(e1)))
    ev2 = np.asarray(_fallback.tql_eigenvalues(np.array(d2), np.array(e2)))
    assert np.allclose(ev1, ev2, atol=1e-11)
    assert np.allclose(ev1, np.linalg.eigvalsh(a), atol=1e-10)


@compiled
@pytest.mark.parametrize("degrees", [(4,), (4, 4), (3, 3), (2, 4, 2), (6, 2), (4, 4, 4)])
def test_wick_parity(degrees):
    from rmtk import _core

    nxt, vert = _ribbon(degrees)
    a = np.asarray(_core.wick_face_counts(nxt, vert, len(degrees)))
    b = _fallback.wick_face_counts(nxt, vert, len(degrees))
    assert np.array_equal(a, b)


def _reference_moment():
    prev = _kernels.set_backend("python")
    try:
        return gaussian_moment(TraceWord((4,), 1))
    finally:
        _kernels.set_backend(prev)


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_pipeline_backend(backend):
    if backend == "compiled" and not _kernels.compiled_available():
        pytest.skip("compiled kernels not built")
    prev = _kernels.set_backend(backend)
    try:
        poly = dict(gaussian_moment(TraceWord((4,), 1)))
        # 8 half-edges: 7!! = 105 matchings in total
        assert sum(poly.values()) == 105
        # (2N + 1/N)^2 from disconnected pairings plus the connected 36 + 60/N^2
        assert poly == {2: 4, 0: 40, -2: 61} == dict(_reference_moment())
        assert np.allclose(eigenvalues_symmetric([[2.0, 1.0], [1.0, 2.0]]), [1, 3])
    finally:
        _kernels.set_backend(prev)
