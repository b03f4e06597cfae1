import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import pt_dense
from entbounds.linalg import eigendecompose, hermitize, partial_transpose, trace_norm


@given(st.integers(1, 20), st.booleans(), st.integers(0, 2**32 - 1))
def test_jacobi_matches_lapack(d, cplx, seed):
    r = np.random.default_rng(seed)
    m = r.normal(size=(d, d)) + (1j * r.normal(size=(d, d)) if cplx else 0)
    m = m + m.conj().T
    w, v = eigendecompose(m)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(m), atol=1e-11 * max(1, np.abs(m).max()))
    np.testing.assert_allclose(m @ v, v * w, atol=1e-10 * max(1, np.abs(m).max()))
    np.testing.assert_allclose(v.conj().T @ v, np.eye(d), atol=1e-12)


def test_degenerate_and_zero():
    w, _ = eigendecompose(np.zeros((3, 3)))
    np.testing.assert_array_equal(w, 0)
    w, _ = eigendecompose(np.diag([2.0, 2.0, -1.0]))
    np.testing.assert_allclose(w, [-1, 2, 2])


def test_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        eigendecompose(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        hermitize(np.ones((2, 3)))


@given(st.integers(1, 4), st.data())
def test_partial_transpose_matches_index_swap(n, data):
    q = data.draw(st.integers(0, n - 1))
    r = np.random.default_rng(data.draw(st.integers(0, 1000)))
    m = r.normal(size=(1 << n, 1 << n)) + 1j * r.normal(size=(1 << n, 1 << n))
    np.testing.assert_array_equal(partial_transpose(m, [q]), pt_dense(m, q, n))
    np.testing.assert_array_equal(partial_transpose(partial_transpose(m, [q]), [q]), m)


def test_trace_norm_of_bell_partial_transpose():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(phi, phi)
    assert trace_norm(partial_transpose(rho, [0])) == pytest.approx(2.0, abs=1e-13)
