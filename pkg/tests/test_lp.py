import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from entbounds import lp


def _beale():
    p = lp.LinearProgram([-0.75, 20, -0.5, 6])
    p.add_constraint([0.25, -8, -1, 9], "<=", 0)
    p.add_constraint([0.5, -12, -0.5, 3], "<=", 0)
    p.add_constraint([0, 0, 1, 0], "<=", 1)
    return p


def test_textbook_optimum_and_duals():
    # max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    p = lp.LinearProgram([-3, -5])
    p.add_constraint([1, 0], "<=", 4, "a")
    p.add_constraint([0, 2], "<=", 12, "b")
    p.add_constraint([3, 2], "<=", 18, "c")
    s = lp.solve(p)
    assert s.optimal
    np.testing.assert_allclose(s.x, [2, 6], atol=1e-12)
    assert s.objective_value == pytest.approx(-36)
    np.testing.assert_allclose(s.dual_values, [0, -1.5, -1], atol=1e-12)
    assert s.duality_gap < 1e-12
    assert lp.verify_certificate(p, s.x, s.dual_values).passed


def test_degenerate_cycling_example():
    s = lp.solve(_beale())
    assert s.optimal and s.objective_value == pytest.approx(-1.25, abs=1e-12)


def test_bland_rule_path(monkeypatch):
    monkeypatch.setattr(lp, "BLAND_AFTER", 0)
    s = lp.solve(_beale())
    assert s.optimal and s.objective_value == pytest.approx(-1.25, abs=1e-12)
    assert s.bland_engaged


def test_infeasible_and_unbounded():
    p = lp.LinearProgram([1, 1])
    p.add_constraint([1, 1], "<=", -1)
    assert lp.solve(p).status is lp.Status.INFEASIBLE
    q = lp.LinearProgram([-1, 0], lower=[0, -np.inf])
    q.add_constraint([1, -1], "<=", 1)
    assert lp.solve(q).status is lp.Status.UNBOUNDED


def test_validation_errors():
    p = lp.LinearProgram([1, 2])
    with pytest.raises(ValueError):
        p.add_constraint([1, 2, 3], "<=", 1)
    with pytest.raises(ValueError):
        p.add_constraint([1, 2], "<>", 1)
    q = lp.LinearProgram([1, np.nan])
    with pytest.raises(ValueError):
        lp.solve(q)


def test_certificate_names_violated_rows():
    p = lp.LinearProgram([1, 1])
    p.add_constraint([1, 1], ">=", 2, "cover")
    rep = lp.verify_certificate(p, np.array([0.5, 0.5]))
    assert not rep.passed and any("cover" in v for v in rep.violations)


@st.composite
def random_lps(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    r = np.random.default_rng(seed)
    n, m = r.integers(1, 7), r.integers(1, 7)
    A = r.integers(-4, 5, size=(m, n)).astype(float)
    b = r.integers(-5, 8, size=m).astype(float)
    c = r.integers(-4, 5, size=n).astype(float)
    senses = r.choice(["<=", ">=", "="], size=m, p=[0.45, 0.35, 0.2])
    kind = r.integers(0, 3, size=n)
    lo = np.where(kind == 0, 0.0, np.where(kind == 1, -np.inf, -2.0))
    up = np.where(r.random(n) < 0.3, 3.0, np.inf)
    return A, b, c, senses, lo, up


@given(random_lps())
def test_agrees_with_highs(prob):
    A, b, c, senses, lo, up = prob
    p = lp.LinearProgram(c, lower=lo, upper=up)
    for row, s, v in zip(A, senses, b):
        p.add_constraint(row, s, v)
    ours = lp.solve(p)
    ub = [row if s == "<=" else -row for row, s in zip(A, senses) if s != "="]
    bub = [v if s == "<=" else -v for v, s in zip(b, senses) if s != "="]
    eq = [(row, v) for row, s, v in zip(A, senses, b) if s == "="]
    ref = linprog(c, A_ub=np.array(ub) if ub else None, b_ub=bub or None,
                  A_eq=np.array([e[0] for e in eq]) if eq else None,
                  b_eq=[e[1] for e in eq] or None,
                  bounds=list(zip([None if not np.isfinite(v) else v for v in lo],
                                  [None if not np.isfinite(v) else v for v in up])),
                  method="highs")
    if ref.status == 0:
        assert ours.optimal
        assert ours.objective_value == pytest.approx(ref.fun, abs=1e-8)
        rep = lp.verify_certificate(p, ours.x, ours.dual_values)
        assert rep.passed, rep.violations
        assert ours.duality_gap < 1e-8
    elif ours.optimal:
        # HiGHS occasionally reports infeasible-or-unbounded; only a certified optimum is accepted here
        assert lp.verify_certificate(p, ours.x, ours.dual_values).passed
        assert ref.status in (2, 3, 4)
    else:
        assert ref.status in (2, 3, 4)
