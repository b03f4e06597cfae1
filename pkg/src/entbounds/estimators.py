"""scikit-learn style wrappers: rows of ``X`` are measurement records.

``transform`` returns bounds as an ``(n_samples, 1)`` column so the
estimators compose inside a :class:`~sklearn.pipeline.Pipeline`;
``predict`` returns the same values flattened.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import bounds as B
from ._validation import check_choice, check_outcomes, check_spec


class _BoundEstimator(TransformerMixin, BaseEstimator):
    _quantity: str
    _methods: frozenset

    def fit(self, X, y=None):
        spec = check_spec(self.spec)
        check_choice("method", self.method, self._methods)
        X = check_outcomes(X, spec.n)
        self.n_features_in_ = X.shape[1]
        self.spec_ = spec
        return self

    def _bound(self, row) -> B.BoundResult:
        return B.compute_bound(B.MeasurementRecord(self.spec_, tuple(row)), self._quantity, self.method)

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "spec_")
        X = check_outcomes(X, self.n_features_in_)
        return np.array([self._bound(row).value for row in X])

    def transform(self, X) -> np.ndarray:
        return self.predict(X)[:, None]

    def bound_results(self, X) -> list[B.BoundResult]:
        """Full results (certificates, diagnostics) for each row."""
        check_is_fitted(self, "spec_")
        return [self._bound(row) for row in check_outcomes(X, self.n_features_in_)]


class FidelityBound(_BoundEstimator):
    """Least fidelity with the stabilizer state of ``spec``."""

    _quantity = "fidelity"
    _methods = frozenset({"auto", "closed", "lp"})

    def __init__(self, spec=None, method="auto"):
        self.spec = spec
        self.method = method


class GREBound(_BoundEstimator):
    """Least Global Robustness of Entanglement consistent with each row."""

    _quantity = "gre"
    _methods = frozenset({"auto", "closed", "lp", "sdp"})

    def __init__(self, spec=None, method="auto"):
        self.spec = spec
        self.method = method


class NegativityBound(TransformerMixin, BaseEstimator):
    """Two-qubit log-negativity bound; columns are ``(ax, az)`` or ``(ax, az, ay)``."""

    def __init__(self, variant="printed"):
        self.variant = variant

    def fit(self, X, y=None):
        check_choice("variant", self.variant, {"printed", "halved"})
        X = check_outcomes(X)
        if X.shape[1] not in (2, 3):
            raise ValueError("expected columns (ax, az) or (ax, az, ay)")
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        X = check_outcomes(X, self.n_features_in_)
        ay = (lambda r: r[2]) if X.shape[1] == 3 else (lambda r: None)
        return np.array([B.negativity_bound_closed(r[0], r[1], ay(r), self.variant).value for r in X])

    def transform(self, X) -> np.ndarray:
        return self.predict(X)[:, None]
