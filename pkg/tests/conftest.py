import functools
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=120, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_label(label):
    """Kronecker product for a label with qubit 0 leftmost in the string and
    as the last (least significant) tensor factor."""
    sign = -1 if label.startswith("-") else 1
    body = label.lstrip("+-")
    return sign * functools.reduce(np.kron, [PAULI[c] for c in reversed(body)])


def graph_state_vector(n, edges):
    """|G> = prod CZ |+>^n, built directly in the computational basis."""
    idx = np.arange(1 << n)
    amp = np.ones(1 << n, dtype=complex) / np.sqrt(1 << n)
    for u, v in edges:
        both = ((idx >> u) & 1) & ((idx >> v) & 1)
        amp *= np.where(both, -1.0, 1.0)
    return amp


def ghz_vector(n):
    v = np.zeros(1 << n, dtype=complex)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return v


def pt_dense(m, qubit, n):
    """Partial transpose on ``qubit`` by explicit index swapping."""
    d = 1 << n
    out = np.empty_like(m)
    bit = 1 << qubit
    for r in range(d):
        for c in range(d):
            rb, cb = r & bit, c & bit
            out[(r & ~bit) | cb, (c & ~bit) | rb] = m[r, c]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
