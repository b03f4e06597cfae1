"""Symplectic Pauli strings and stabilizer groups of graph and GHZ states.

Qubit ``k`` (0-based) is bit ``k`` of every integer mask and every group
index, i.e. qubit 0 is the least significant bit.  A Pauli label such as
``"XZIZ"`` lists qubit 0 first.  Dense matrices use the matching basis
ordering, so qubit 0 is the *last* Kronecker factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_QUBITS = 16

_LABELS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LABELS.items()}

_DENSE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _popcount(v):
    return bin(int(v)).count("1")


def _check_n(n):
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")


@dataclass(frozen=True)
class PauliString:
    """Hermitian Pauli operator ``sign * P_0 (x) ... (x) P_{n-1}``.

    ``x`` and ``z`` are integer bit masks.  A qubit with both bits set is
    ``Y`` (not ``XZ``), so every string squares to the identity.
    """

    n: int
    x: int = 0
    z: int = 0
    sign: int = 1

    def __post_init__(self):
        _check_n(self.n)
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise ValueError("bit masks exceed qubit count")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse ``"XZIZ"`` / ``"-YY"`` (qubit 0 leftmost)."""
        sign = 1
        body = label.strip()
        if body[:1] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        x = z = 0
        for k, ch in enumerate(body.upper()):
            try:
                bx, bz = _BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli label {label!r}") from None
            x |= bx << k
            z |= bz << k
        return cls(len(body), x, z, sign)

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> k) & 1 for k in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> k) & 1 for k in range(self.n))

    @property
    def label(self) -> str:
        body = "".join(_LABELS[b] for b in zip(self.x_bits, self.z_bits))
        return ("-" if self.sign < 0 else "") + body

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def commutes(self, other: "PauliString") -> bool:
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def to_dense(self) -> np.ndarray:
        if self.n > 8:
            raise ValueError("dense Pauli matrices limited to 8 qubits")
        out = np.array([[1.0 + 0j]])
        # qubit 0 is the last Kronecker factor
        for ch in reversed(self.label.lstrip("-")):
            out = np.kron(out, _DENSE[ch])
        return self.sign * out

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __repr__(self):
        return f"PauliString({self.label!r})"


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Product of two commuting Pauli strings with exact sign tracking.

    Raises
    ------
    ValueError
        On mismatched qubit counts or anticommuting operands.
    """
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} vs {b.n}")
    if not a.commutes(b):
        raise ValueError(f"{a.label} and {b.label} anticommute")
    x, z = a.x ^ b.x, a.z ^ b.z
    # per qubit, Y = i X Z; collect the powers of i
    phase = (
        _popcount(a.x & a.z)
        + _popcount(b.x & b.z)
        + 2 * _popcount(a.z & b.x)
        - _popcount(x & z)
    ) % 4
    return PauliString(a.n, x, z, a.sign * b.sign * (1 if phase == 0 else -1))


def pt_sign(p: PauliString, parties: Iterable[int] | int) -> int:
    """Sign picked up by ``p`` under partial transposition of ``parties``.

    Transposition fixes ``I``, ``X``, ``Z`` and negates ``Y``.
    """
    mask = parties if isinstance(parties, (int, np.integer)) else parties_mask(parties)
    return -1 if _popcount(p.x & p.z & int(mask)) % 2 else 1


def dephasing_weight(p: PauliString) -> int:
    """Number of qubits on which ``p`` anticommutes with ``Z``."""
    return _popcount(p.x)


def parties_mask(parties: Iterable[int]) -> int:
    mask = 0
    for q in parties:
        if q < 0 or q >= MAX_QUBITS:
            raise ValueError(f"invalid qubit index {q}")
        mask |= 1 << q
    return mask


def adjacency_from_edges(n: int, edges: Iterable[Sequence[int]]) -> np.ndarray:
    adj = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"invalid edge ({u}, {v}) for {n} qubits")
        adj[u, v] = adj[v, u] = 1
    return adj


@dataclass(frozen=True, eq=False)
class StabilizerSpec:
    """Generators of a graph-state or GHZ stabilizer group.

    Use the constructors :meth:`graph`, :meth:`from_edges`, :meth:`ghz`,
    :meth:`line`, :meth:`ring` rather than the raw initializer.
    """

    family: str
    n: int
    generators: tuple[PauliString, ...]
    adjacency: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        _check_n(self.n)
        if len(self.generators) != self.n:
            raise ValueError("need exactly n generators")
        for i, g in enumerate(self.generators):
            if g.n != self.n:
                raise ValueError("generator qubit count mismatch")
            for h in self.generators[i + 1:]:
                if not g.commutes(h):
                    raise ValueError(f"generators {g.label} and {h.label} anticommute")
        if _symplectic_rank(self.generators) != self.n:
            raise ValueError("generators are not independent")

    @classmethod
    def graph(cls, adjacency) -> "StabilizerSpec":
        adj = np.asarray(adjacency, dtype=np.int64)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.all((adj == 0) | (adj == 1)):
            raise ValueError("adjacency entries must be 0 or 1")
        if np.any(adj != adj.T) or np.any(np.diag(adj)):
            raise ValueError("adjacency must be symmetric with zero diagonal")
        n = adj.shape[0]
        gens = tuple(
            PauliString(n, 1 << i, parties_mask(np.flatnonzero(adj[i])))
            for i in range(n)
        )
        return cls("graph", n, gens, tuple(map(tuple, adj.tolist())))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "StabilizerSpec":
        """Graph state from 0-based edges."""
        _check_n(n)
        return cls.graph(adjacency_from_edges(n, edges))

    @classmethod
    def line(cls, n: int) -> "StabilizerSpec":
        return cls.from_edges(n, [(k, k + 1) for k in range(n - 1)])

    @classmethod
    def ring(cls, n: int) -> "StabilizerSpec":
        """Cycle graph; ``ring(3)`` is the triangle, ``ring(4)`` the box cluster."""
        if n < 3:
            return cls.line(n)
        return cls.from_edges(n, [(k, (k + 1) % n) for k in range(n)])

    @classmethod
    def ghz(cls, n: int) -> "StabilizerSpec":
        _check_n(n)
        if n < 2:
            raise ValueError("GHZ states need at least 2 qubits")
        full = (1 << n) - 1
        gens = [PauliString(n, full, 0)]
        gens += [PauliString(n, 0, (1 << (k - 1)) | (1 << k)) for k in range(1, n)]
        return cls("ghz", n, tuple(gens))

    @property
    def edges(self) -> list[tuple[int, int]]:
        if self.adjacency is None:
            return []
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.adjacency[i][j]
        ]

    @property
    def dim(self) -> int:
        return 1 << self.n

    @cached_property
    def _tables(self):
        # x mask, z mask and sign of G(i) for every group index i
        size = 1 << self.n
        xs = np.zeros(size, dtype=np.int64)
        zs = np.zeros(size, dtype=np.int64)
        signs = np.ones(size, dtype=np.int8)
        for k, g in enumerate(self.generators):
            lo = 1 << k
            px, pz, ps = xs[:lo], zs[:lo], signs[:lo]
            nx, nz = px ^ g.x, pz ^ g.z
            phase = (
                _vpop(px & pz) + _popcount(g.x & g.z) + 2 * _vpop(pz & g.x) - _vpop(nx & nz)
            ) % 4
            xs[lo:2 * lo] = nx
            zs[lo:2 * lo] = nz
            signs[lo:2 * lo] = ps * g.sign * np.where(phase == 0, 1, -1)
        for arr in (xs, zs, signs):
            arr.setflags(write=False)
        return xs, zs, signs

    def element(self, index) -> PauliString:
        return group_element(self, index)

    def elements(self) -> list[PauliString]:
        xs, zs, signs = self._tables
        return [PauliString(self.n, int(a), int(b), int(s)) for a, b, s in zip(xs, zs, signs)]

    def pt_signs(self, parties) -> np.ndarray:
        """``pt_sign(G(i), parties)`` for all group indices ``i``."""
        mask = parties if isinstance(parties, (int, np.integer)) else parties_mask(parties)
        xs, zs, _ = self._tables
        return np.where(_vpop(xs & zs & int(mask)) % 2, -1.0, 1.0)

    def dephasing_weights(self) -> np.ndarray:
        return _vpop(self._tables[0])

    def index_of(self, p: PauliString) -> tuple[int, int]:
        """Group index ``i`` and sign ``s`` with ``p == s * G(i)``.

        Raises ``KeyError`` when ``p`` is not (up to sign) in the group.
        """
        xs, zs, signs = self._tables
        hit = np.flatnonzero((xs == p.x) & (zs == p.z))
        if p.n != self.n or hit.size == 0:
            raise KeyError(f"{p.label} is not in the stabilizer group")
        i = int(hit[0])
        return i, int(p.sign * signs[i])

    def describe(self) -> str:
        if self.family == "ghz":
            return f"GHZ({self.n})"
        return f"graph({self.n}, edges={[(u + 1, v + 1) for u, v in self.edges]})"

    def __eq__(self, other):
        if not isinstance(other, StabilizerSpec):
            return NotImplemented
        return self.family == other.family and self.generators == other.generators

    def __hash__(self):
        return hash((self.family, self.generators))

    def __repr__(self):
        return f"StabilizerSpec({self.describe()})"


def _vpop(arr):
    arr = np.asarray(arr, dtype=np.int64)
    out = np.zeros(arr.shape, dtype=np.int64)
    for k in range(MAX_QUBITS):
        out += (arr >> k) & 1
    return out


def _symplectic_rank(paulis: Sequence[PauliString]) -> int:
    if not paulis:
        return 0
    n = paulis[0].n
    rows = [p.x | (p.z << n) for p in paulis]
    rank = 0
    for bit in range(2 * n):
        pivot = next((r for r in rows[rank:] if (r >> bit) & 1), None)
        if pivot is None:
            continue
        k = rows.index(pivot, rank)
        rows[rank], rows[k] = rows[k], rows[rank]
        for j in range(len(rows)):
            if j != rank and (rows[j] >> bit) & 1:
                rows[j] ^= rows[rank]
        rank += 1
    return rank


def _as_index(spec: StabilizerSpec, index) -> int:
    if isinstance(index, (int, np.integer)):
        i = int(index)
        if not 0 <= i < spec.dim:
            raise ValueError(f"group index {i} out of range")
        return i
    bits = list(index)
    if len(bits) != spec.n:
        raise ValueError(f"index has length {len(bits)}, expected {spec.n}")
    return sum((int(b) & 1) << k for k, b in enumerate(bits))


def group_element(spec: StabilizerSpec, index) -> PauliString:
    """``K_1^{i_1} ... K_n^{i_n}`` for an integer or bit-vector index."""
    i = _as_index(spec, index)
    xs, zs, signs = spec._tables
    return PauliString(spec.n, int(xs[i]), int(zs[i]), int(signs[i]))
