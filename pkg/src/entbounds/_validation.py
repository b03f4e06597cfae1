"""Input checks shared by the estimator layer."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .pauli import StabilizerSpec


def check_outcomes(X, n_features: int | None = None) -> np.ndarray:
    """2-D float array of expectation values in ``[-1, 1]``, one row per record."""
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_all_finite=True)
    if n_features is not None and X.shape[1] != n_features:
        raise ValueError(f"X has {X.shape[1]} columns, expected {n_features}")
    bad = np.abs(X) > 1.0
    if bad.any():
        i, k = map(int, np.argwhere(bad)[0])
        raise ValueError(f"outcome out of physical range: X[{i}, {k}] = {X[i, k]}")
    return X


def check_spec(spec) -> StabilizerSpec:
    if not isinstance(spec, StabilizerSpec):
        raise TypeError(f"spec must be a StabilizerSpec, got {type(spec).__name__}")
    return spec


def check_choice(name: str, value, allowed) -> str:
    if value not in allowed:
        raise ValueError(f"{name} must be one of {sorted(allowed)}, got {value!r}")
    return value
