"""Operators diagonal in a stabilizer basis.

A :class:`SymState` stores ``coeffs`` with ``operator = sum_i coeffs[i] G(i)``
where ``G(i)`` is the group element with index ``i``.  No ``1/2^n`` prefactor
is folded in: a density matrix has ``coeffs[0] == 1/2^n``.

Eigenvalue ``j`` of such an operator is ``sum_i (-1)^{popcount(i & j)} coeffs[i]``
and belongs to the joint eigenvector on which generator ``k`` has eigenvalue
``(-1)^{j_k}``.
"""
from __future__ import annotations

import numpy as np

from .pauli import StabilizerSpec

EIG_TOL = 1e-9
DENSE_MAX_QUBITS = 8


def walsh_hadamard(values, inplace=False) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform (radix-2 butterflies).

    ``out[j] = sum_i (-1)^{popcount(i & j)} values[i]``.  Applying it twice
    multiplies by ``len(values)``.
    """
    v = values if inplace else np.array(values, dtype=float, copy=True)
    size = v.shape[0]
    if size & (size - 1) or size == 0:
        raise ValueError("length must be a power of two")
    h = 1
    while h < size:
        blocks = v.reshape(-1, 2, h)
        lo = blocks[:, 0, :].copy()
        blocks[:, 0, :] += blocks[:, 1, :]
        blocks[:, 1, :] = lo - blocks[:, 1, :]
        h *= 2
    return v


def walsh_matrix(n: int) -> np.ndarray:
    """Dense ``2^n x 2^n`` sign matrix of :func:`walsh_hadamard`."""
    idx = np.arange(1 << n)
    parity = np.zeros((1 << n, 1 << n), dtype=np.int64)
    both = idx[:, None] & idx[None, :]
    for k in range(n):
        parity ^= (both >> k) & 1
    return 1.0 - 2.0 * parity


class SymState:
    """Real coefficient vector over the stabilizer group of ``spec``.

    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("spec", "_coeffs")

    def __init__(self, spec: StabilizerSpec, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.shape != (spec.dim,):
            raise ValueError(f"expected {spec.dim} coefficients, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        self.spec = spec
        self._coeffs = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def n(self) -> int:
        return self.spec.n

    @classmethod
    def target(cls, spec: StabilizerSpec) -> "SymState":
        """The pure stabilizer state ``|phi><phi| = 2^-n sum_i G(i)``."""
        return cls(spec, np.full(spec.dim, 1.0 / spec.dim))

    @classmethod
    def maximally_mixed(cls, spec: StabilizerSpec) -> "SymState":
        c = np.zeros(spec.dim)
        c[0] = 1.0 / spec.dim
        return cls(spec, c)

    @classmethod
    def from_eigenvalues(cls, spec: StabilizerSpec, values) -> "SymState":
        v = np.asarray(values, dtype=float)
        return cls(spec, walsh_hadamard(v) / spec.dim)

    def eigenvalues(self) -> np.ndarray:
        return eigenvalues(self)

    def partial_transpose(self, parties) -> "SymState":
        return partial_transpose(self, parties)

    def to_dense(self) -> np.ndarray:
        return to_dense(self)

    def trace(self) -> float:
        return self.spec.dim * float(self._coeffs[0])

    def expectation(self, index: int) -> float:
        """``tr(rho G(index))``."""
        return self.spec.dim * float(self._coeffs[index])

    def is_density_matrix(self, tol: float = EIG_TOL) -> bool:
        return abs(self.trace() - 1.0) <= tol and bool(self.eigenvalues().min() >= -tol)

    def _check(self, other):
        if not isinstance(other, SymState):
            return NotImplemented
        if other.spec != self.spec:
            raise ValueError("states belong to different stabilizer groups")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return SymState(self.spec, self._coeffs + other._coeffs)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return SymState(self.spec, self._coeffs - other._coeffs)

    def __mul__(self, scalar):
        return SymState(self.spec, self._coeffs * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return SymState(self.spec, -self._coeffs)

    def __repr__(self):
        return f"SymState({self.spec.describe()}, coeffs={np.array2string(self._coeffs, precision=4)})"


def eigenvalues(s: SymState) -> np.ndarray:
    """Spectrum indexed by the generator eigenvalue pattern ``j``."""
    return walsh_hadamard(s.coeffs)


def partial_transpose(s: SymState, parties) -> SymState:
    """Partial transpose on the qubits in ``parties`` (0-based)."""
    return SymState(s.spec, s.coeffs * s.spec.pt_signs(parties))


def to_dense(s: SymState) -> np.ndarray:
    if s.n > DENSE_MAX_QUBITS:
        raise ValueError(f"dense conversion limited to {DENSE_MAX_QUBITS} qubits")
    out = np.zeros((s.spec.dim, s.spec.dim), dtype=complex)
    for c, g in zip(s.coeffs, s.spec.elements()):
        if c != 0.0:
            out += c * g.to_dense()
    return out
