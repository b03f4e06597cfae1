import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import pt_dense
from entbounds.pauli import StabilizerSpec
from entbounds.symstate import SymState, walsh_hadamard, walsh_matrix

SPECS = [StabilizerSpec.ring(2), StabilizerSpec.ring(3), StabilizerSpec.ring(4),
         StabilizerSpec.ghz(3), StabilizerSpec.line(4)]
specs = st.sampled_from(SPECS)
coeff_vectors = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.floats(-1, 1), min_size=1 << n, max_size=1 << n))


@given(coeff_vectors)
def test_walsh_involution(v):
    v = np.array(v)
    np.testing.assert_allclose(walsh_hadamard(walsh_hadamard(v)) / v.size, v, atol=1e-12)


@given(st.integers(0, 6))
def test_walsh_matches_matrix(n):
    v = np.random.default_rng(n).normal(size=1 << n)
    np.testing.assert_allclose(walsh_hadamard(v), walsh_matrix(n) @ v, atol=1e-12)


def test_walsh_rejects_bad_length():
    with pytest.raises(ValueError):
        walsh_hadamard(np.ones(3))


@given(specs, st.data())
def test_eigenvalues_match_dense(spec, data):
    c = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=spec.dim, max_size=spec.dim)))
    s = SymState(spec, c)
    dense = np.linalg.eigvalsh(s.to_dense())
    np.testing.assert_allclose(np.sort(s.eigenvalues()), dense, atol=1e-12)


@given(specs, st.data())
def test_trace_identity(spec, data):
    """tr(G(k) G(i)) = 2^n delta_ki, so tr(rho G(k)) = 2^n c_k."""
    c = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=spec.dim, max_size=spec.dim)))
    s = SymState(spec, c)
    k = data.draw(st.integers(0, spec.dim - 1))
    dense = np.trace(s.to_dense() @ spec.element(k).to_dense()).real
    assert dense == pytest.approx(s.expectation(k), abs=1e-12)
    assert np.trace(s.to_dense()).real == pytest.approx(s.trace(), abs=1e-12)


@given(specs, st.data())
def test_partial_transpose_involution_and_dense(spec, data):
    c = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=spec.dim, max_size=spec.dim)))
    q = data.draw(st.integers(0, spec.n - 1))
    s = SymState(spec, c)
    np.testing.assert_array_equal(s.partial_transpose([q]).partial_transpose([q]).coeffs, s.coeffs)
    np.testing.assert_allclose(s.partial_transpose([q]).to_dense(), pt_dense(s.to_dense(), q, spec.n), atol=1e-12)


def test_target_is_pure_projector():
    for spec in SPECS:
        t = SymState.target(spec)
        ev = t.eigenvalues()
        assert ev[0] == pytest.approx(1.0) and np.allclose(ev[1:], 0)
        assert t.is_density_matrix()
        assert SymState.maximally_mixed(spec).is_density_matrix()


def test_from_eigenvalues_round_trip():
    spec = StabilizerSpec.ghz(3)
    lam = np.arange(8) / 28
    np.testing.assert_allclose(SymState.from_eigenvalues(spec, lam).eigenvalues(), lam, atol=1e-15)


def test_arithmetic_and_immutability():
    spec = StabilizerSpec.ring(2)
    a, b = SymState.target(spec), SymState.maximally_mixed(spec)
    np.testing.assert_allclose((a + b).coeffs, a.coeffs + b.coeffs)
    np.testing.assert_allclose((2 * a - b).coeffs, 2 * a.coeffs - b.coeffs)
    with pytest.raises(ValueError):
        a.coeffs[0] = 1.0
    with pytest.raises(ValueError, match="different"):
        a + SymState.target(StabilizerSpec.ghz(2))
    with pytest.raises(ValueError):
        SymState(spec, [1, 2, 3])
