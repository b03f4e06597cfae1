import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import dense_label, ghz_vector, graph_state_vector
from entbounds import bounds as B
from entbounds.noise import (
    DEFAULT_GAMMA_T,
    DephasingScenario,
    dephase,
    generator_outcomes,
    kraus_dephase_dense,
    pauli_channel,
    table1,
)
from entbounds.pauli import StabilizerSpec
from entbounds.symstate import SymState

SPECS = [StabilizerSpec.ring(2), StabilizerSpec.ring(3), StabilizerSpec.line(3), StabilizerSpec.ghz(3)]
gts = st.floats(0, 8)


def _kraus_oracle(psi, gt):
    """Single-qubit channels applied with explicit Kraus operators, one qubit at a time."""
    n = psi.size.bit_length() - 1
    p = (1 - math.exp(-gt)) / 2
    rho = np.outer(psi, psi.conj())
    for q in range(n):
        K0 = math.sqrt(1 - p) * np.eye(1 << n)
        K1 = math.sqrt(p) * dense_label("".join("Z" if k == q else "I" for k in range(n)))
        rho = K0 @ rho @ K0.conj().T + K1 @ rho @ K1.conj().T
    return rho


def _target_vector(spec):
    return ghz_vector(spec.n) if spec.family == "ghz" else graph_state_vector(spec.n, spec.edges)


@given(st.sampled_from(SPECS), gts)
def test_dephase_matches_kraus_channel(spec, gt):
    ours = dephase(spec, gt).to_dense()
    np.testing.assert_allclose(ours, _kraus_oracle(_target_vector(spec), gt), atol=1e-12)
    np.testing.assert_allclose(kraus_dephase_dense(SymState.target(spec).to_dense(), gt), ours, atol=1e-12)


@given(st.sampled_from(SPECS + [StabilizerSpec.ring(5)]), gts)
def test_output_is_density_matrix(spec, gt):
    s = dephase(spec, gt)
    assert s.trace() == pytest.approx(1.0, abs=1e-12)
    assert s.eigenvalues().min() >= -1e-12


@given(gts, gts)
def test_semigroup(t1, t2):
    spec = StabilizerSpec.ring(4)
    np.testing.assert_allclose(dephase(spec, t2, start=dephase(spec, t1)).coeffs,
                               dephase(spec, t1 + t2).coeffs, atol=1e-15)


@given(st.integers(2, 6), gts)
def test_graph_outcomes_are_exactly_exponential(n, gt):
    a = generator_outcomes(dephase(StabilizerSpec.ring(n), gt))
    # power-of-two normalization makes the read-back exact
    assert np.all(a == np.exp(-gt))


def test_examples():
    spec = StabilizerSpec.ring(2)
    np.testing.assert_array_equal(dephase(spec, 0.0).coeffs, SymState.target(spec).coeffs)
    np.testing.assert_array_equal(generator_outcomes(SymState.target(spec)), [1, 1])
    np.testing.assert_array_equal(generator_outcomes(SymState.maximally_mixed(spec)), [0, 0])
    np.testing.assert_allclose(generator_outcomes(dephase(spec)), 0.9048, atol=5e-5)
    assert B.gre_exact_symmetric(dephase(spec, 0.1)).value == pytest.approx(0.8142, abs=5e-5)
    assert DEFAULT_GAMMA_T == 0.1


def test_long_time_limit_is_separable():
    s = dephase(StabilizerSpec.ring(3), 60.0)
    assert B.gre_exact_symmetric(s).value == pytest.approx(0.0, abs=1e-9)
    # surviving elements contain no X or Y, so the dense state is diagonal and PPT
    d = s.to_dense()
    np.testing.assert_allclose(d, np.diag(np.diag(d)), atol=1e-12)


def test_scenario_validation_and_gamma_t():
    sc = DephasingScenario(StabilizerSpec.ring(3), gamma=0.1, time=0.01)
    assert sc.gamma_t == pytest.approx(0.001)
    np.testing.assert_allclose(dephase(sc).coeffs, dephase(sc.spec, 0.001).coeffs)
    with pytest.raises(ValueError):
        DephasingScenario(StabilizerSpec.ring(3), gamma=-1)
    with pytest.raises(ValueError):
        dephase(StabilizerSpec.ring(3), -0.5)


@given(st.sampled_from(SPECS), gts)
def test_pauli_channel_hook_reproduces_dephasing(spec, gt):
    p = (1 - math.exp(-gt)) / 2
    out = pauli_channel(SymState.target(spec), {"Z": p})
    np.testing.assert_allclose(out.coeffs, dephase(spec, gt).coeffs, atol=1e-15)


def test_pauli_channel_dense_oracle():
    spec = StabilizerSpec.ghz(3)
    probs = [{"X": 0.1}, {"Y": 0.05, "Z": 0.2}, {"Z": 0.3, "X": 0.02}]
    rho = SymState.target(spec).to_dense()
    for q, pr in enumerate(probs):
        acc = (1 - sum(pr.values())) * rho
        for k, v in pr.items():
            P = dense_label("".join(k if j == q else "I" for j in range(3)))
            acc = acc + v * P @ rho @ P
        rho = acc
    out = pauli_channel(SymState.target(spec), probs)
    # Pauli channels only rescale Pauli expectations
    for i, g in enumerate(spec.elements()):
        assert np.trace(g.to_dense() @ rho).real == pytest.approx(out.expectation(i), abs=1e-12)
    with pytest.raises(ValueError):
        pauli_channel(out, {"W": 0.1})
    with pytest.raises(ValueError):
        pauli_channel(out, [{"X": 0.1}])


def test_table1_rows():
    rows = table1()
    assert [r.spec.n for r in rows] == [2, 3, 4]
    assert all(max(r.duality_gaps) <= 1e-6 for r in rows)
    flat = table1(0.0)
    assert all(r.exact == pytest.approx(r.estimate, abs=1e-9) and abs(r.deviation) < 1e-9 for r in flat)
