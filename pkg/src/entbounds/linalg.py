"""Dense Hermitian helpers: cyclic Jacobi eigensolver, partial transpose."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

HERMITIAN_TOL = 1e-12
MAX_SWEEPS = 60


def hermitize(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(m + m^H) / 2`` after checking the anti-Hermitian drift."""
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    drift = np.abs(a - a.conj().T).max(initial=0.0)
    scale = max(1.0, np.abs(a).max(initial=0.0))
    if drift > tol * scale:
        raise ValueError(f"matrix is not Hermitian (drift {drift:.3g})")
    return (a + a.conj().T) / 2


def eigendecompose(m, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Cyclic Jacobi rotations; complex entries are first phase-rotated so that
    every rotation is a real 2x2 Givens step.

    Raises
    ------
    ValueError
        If ``m`` is not Hermitian within ``1e-12`` (relative to its largest entry).
    """
    a = hermitize(m) if check else np.asarray(m)
    real = not np.iscomplexobj(a) or not np.any(a.imag)
    dtype = float if real else complex
    A = np.array(a.real if real else a, dtype=dtype)
    d = A.shape[0]
    V = np.eye(d, dtype=dtype)
    if d <= 1:
        return np.real(np.diag(A)).copy(), V
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return np.zeros(d), V
    thresh = 1e-15 * norm
    iu = np.triu_indices(d, 1)
    rounds = _round_robin(d)
    for _ in range(MAX_SWEEPS):
        if np.sqrt(2.0) * np.linalg.norm(A[iu]) <= thresh:
            break
        for P, Q in rounds:
            apq = A[P, Q]
            mag = np.abs(apq)
            live = mag > 1e-18 * norm
            if not live.any():
                continue
            P, Q, apq, mag = P[live], Q[live], apq[live], mag[live]
            app, aqq = A[P, P].real, A[Q, Q].real
            tau = (aqq - app) / (2.0 * mag)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            phc = np.conj(apq / mag)
            # disjoint pairs: each (p, q) gets U = [[c, s], [-s conj(ph), c conj(ph)]]
            for M in (A, V):
                mp, mq = M[:, P], M[:, Q]
                M[:, P], M[:, Q] = mp * c - mq * (s * phc), mp * s + mq * (c * phc)
            rp, rq = A[P, :], A[Q, :]
            A[P, :] = c[:, None] * rp - (s * np.conj(phc))[:, None] * rq
            A[Q, :] = s[:, None] * rp + (c * np.conj(phc))[:, None] * rq
            A[P, Q] = A[Q, P] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


@lru_cache(maxsize=None)
def _round_robin(d):
    """Pairings covering every (p, q) once per sweep, d/2 disjoint pairs per round."""
    players = list(range(d)) + ([-1] if d % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a >= 0 and b >= 0]
        rounds.append((np.array([a for a, _ in pairs]), np.array([b for _, b in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def eigvalsh(m) -> np.ndarray:
    return eigendecompose(m)[0]


def min_eigenvalue(m) -> float:
    return float(eigendecompose(m)[0][0])


def partial_transpose(m, parties, n_qubits: int | None = None) -> np.ndarray:
    """Transpose the tensor factors of the qubits in ``parties``.

    Basis index bit ``k`` is qubit ``k``, so qubit 0 is the last Kronecker factor.
    """
    a = np.asarray(m)
    d = a.shape[0]
    n = n_qubits if n_qubits is not None else d.bit_length() - 1
    if (1 << n) != d or a.shape != (d, d):
        raise ValueError("partial transpose needs a 2^n x 2^n matrix")
    t = a.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for q in parties:
        ax = n - 1 - q
        axes[ax], axes[n + ax] = axes[n + ax], axes[ax]
    return t.transpose(axes).reshape(d, d)


def trace_norm(m) -> float:
    return float(np.abs(eigvalsh(m)).sum())
