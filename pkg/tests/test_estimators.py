import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from entbounds import FidelityBound, GREBound, NegativityBound, StabilizerSpec
from entbounds import bounds as B


def test_gre_estimator_matches_library(rng):
    spec = StabilizerSpec.ring(4)
    X = rng.uniform(0, 1, size=(6, 4))
    est = GREBound(spec=spec).fit(X)
    expected = [B.gre_bound_closed(B.MeasurementRecord(spec, tuple(r))).value for r in X]
    np.testing.assert_allclose(est.predict(X), expected)
    assert est.transform(X).shape == (6, 1)
    np.testing.assert_allclose(GREBound(spec=spec, method="lp").fit(X).predict(X), expected, atol=1e-7)


def test_params_and_clone():
    est = FidelityBound(spec=StabilizerSpec.ghz(3), method="lp")
    assert est.get_params() == {"spec": StabilizerSpec.ghz(3), "method": "lp"}
    c = clone(est).set_params(method="closed")
    assert c.method == "closed" and est.method == "lp"


def test_validation():
    spec = StabilizerSpec.ring(2)
    with pytest.raises(NotFittedError):
        GREBound(spec=spec).predict([[0.5, 0.5]])
    with pytest.raises(ValueError, match="columns"):
        GREBound(spec=spec).fit([[0.5, 0.5, 0.5]])
    with pytest.raises(ValueError, match="physical range"):
        GREBound(spec=spec).fit([[1.5, 0.5]])
    with pytest.raises(TypeError):
        GREBound(spec="ring").fit([[0.5, 0.5]])
    with pytest.raises(ValueError, match="method"):
        FidelityBound(spec=spec, method="sdp").fit([[0.5, 0.5]])
    with pytest.raises(ValueError):
        GREBound(spec=spec).fit([[np.nan, 0.5]])


def test_negativity_and_pipeline():
    X = np.array([[1.0, 1.0], [0.4, 0.5]])
    np.testing.assert_allclose(NegativityBound().fit_transform(X).ravel(), [1.0, 0.0])
    X3 = np.array([[1.0, 1.0, -1.0]])
    assert NegativityBound(variant="halved").fit(X3).predict(X3)[0] == pytest.approx(1.0)
    pipe = make_pipeline(FidelityBound(spec=StabilizerSpec.ring(2)))
    np.testing.assert_allclose(pipe.fit_transform(X).ravel(), [1.0, 0.45])


def test_bound_results_carry_certificates():
    spec = StabilizerSpec.line(4)
    res = GREBound(spec=spec).fit([[0.9] * 4]).bound_results([[0.9] * 4])
    assert res[0].method is B.Method.SYMMETRIC_LP and res[0].certificate["mu"]
