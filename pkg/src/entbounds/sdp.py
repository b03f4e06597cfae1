"""Small dense semidefinite programs solved with a log-det barrier method.

Matrix variables are parametrized by an orthonormal (Frobenius) basis of
real-symmetric or Hermitian matrices.  Linear equalities are eliminated by a
null-space parametrization, so the barrier runs unconstrained Newton steps on
the remaining coordinates.  A phase-1 problem finds a strictly feasible start
or proves that none exists.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .linalg import eigendecompose, hermitize, partial_transpose

logger = logging.getLogger(__name__)

MAX_DIM = 64
PSD_TOL = 1e-6
EQ_TOL = 1e-6
GAP_TOL = 1e-8
MU_FACTOR = 0.2
MAX_OUTER = 50
MAX_NEWTON = 80
INTERIOR_TOL = 1e-9
RELAX = 1e-8


class SdpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    MAX_ITER = "max_iter"


@dataclass
class Lmi:
    """``constant + sum_k scale_k * T_k(X_k)  >= 0`` where ``T_k`` is the
    identity or a partial transpose on ``parties``."""

    terms: list[tuple[str, tuple[int, ...] | None, float]]
    constant: np.ndarray | None = None
    label: str = ""


class SdpProblem:
    """Minimize ``sum_k tr(C_k X_k)`` over Hermitian matrix variables."""

    def __init__(self):
        self.dims: dict[str, int] = {}
        self.starts: dict[str, np.ndarray] = {}
        self.objective: dict[str, np.ndarray] = {}
        self.equalities: list[tuple[dict[str, np.ndarray], float, str]] = []
        self.lmis: list[Lmi] = []

    def add_variable(self, name: str, dim: int, psd: bool = True, start=None):
        if name in self.dims:
            raise ValueError(f"duplicate variable {name!r}")
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"matrix dimension must be in [1, {MAX_DIM}], got {dim}")
        self.dims[name] = dim
        self.starts[name] = np.eye(dim) if start is None else hermitize(start)
        if psd:
            self.add_lmi([(name, None)], label=f"{name} >= 0")
        return self

    def _mat(self, name, m):
        if name not in self.dims:
            raise KeyError(f"unknown variable {name!r}")
        a = hermitize(np.asarray(m))
        if a.shape != (self.dims[name],) * 2:
            raise ValueError(f"coefficient for {name!r} has shape {a.shape}")
        return a

    def set_objective(self, coeffs: Mapping[str, np.ndarray]):
        self.objective = {k: self._mat(k, v) for k, v in coeffs.items()}
        return self

    def add_equality(self, coeffs: Mapping[str, np.ndarray], rhs: float, label: str = ""):
        """``sum_k tr(A_k X_k) == rhs``."""
        if not np.isfinite(rhs):
            raise ValueError("non-finite right-hand side")
        self.equalities.append(({k: self._mat(k, v) for k, v in coeffs.items()}, float(rhs), label))
        return self

    def add_lmi(self, terms: Sequence, constant=None, label: str = ""):
        norm_terms = []
        dim = None
        for term in terms:
            name, parties = term[0], term[1]
            scale = float(term[2]) if len(term) > 2 else 1.0
            if name not in self.dims:
                raise KeyError(f"unknown variable {name!r}")
            if dim is not None and self.dims[name] != dim:
                raise ValueError("LMI terms have different dimensions")
            dim = self.dims[name]
            norm_terms.append((name, tuple(parties) if parties is not None else None, scale))
        const = None if constant is None else hermitize(np.asarray(constant))
        if const is not None and dim is not None and const.shape != (dim, dim):
            raise ValueError("LMI constant has the wrong shape")
        self.lmis.append(Lmi(norm_terms, const, label or f"lmi{len(self.lmis)}"))
        return self

    def is_real(self) -> bool:
        mats = list(self.objective.values())
        mats += [a for coeffs, _, _ in self.equalities for a in coeffs.values()]
        mats += [l.constant for l in self.lmis if l.constant is not None]
        mats += list(self.starts.values())
        return all(not np.iscomplexobj(m) or not np.any(np.imag(m)) for m in mats)


@dataclass
class SdpSolution:
    status: SdpStatus
    values: dict[str, np.ndarray] = field(default_factory=dict)
    objective_value: float = float("nan")
    gap: float = float("nan")
    min_eigenvalues: dict[str, float] = field(default_factory=dict)
    equality_residual: float = float("nan")
    relaxed: bool = False
    newton_steps: int = 0
    message: str = ""

    @property
    def optimal(self) -> bool:
        return self.status is SdpStatus.OPTIMAL


def _basis(d: int, real: bool) -> np.ndarray:
    """Frobenius-orthonormal basis of d x d real-symmetric / Hermitian matrices."""
    mats = []
    for i in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[i, i] = 1.0
        mats.append(e)
    r2 = 1.0 / np.sqrt(2.0)
    for i in range(d):
        for j in range(i + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = e[j, i] = r2
            mats.append(e)
            if not real:
                f = np.zeros((d, d), dtype=complex)
                f[i, j], f[j, i] = -1j * r2, 1j * r2
                mats.append(f)
    return np.array(mats)


def _apply(mats, parties):
    if parties is None:
        return mats
    return np.array([partial_transpose(m, parties) for m in mats])


@dataclass
class _Compiled:
    real: bool
    offsets: dict[str, slice]
    bases: dict[str, np.ndarray]
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    lmi_const: list[np.ndarray]
    lmi_coef: list[np.ndarray]
    labels: list[str]
    x_start: np.ndarray


def _own_psd(lmi: Lmi) -> str | None:
    """Variable name if ``lmi`` is the plain ``X >= 0`` constraint of one variable."""
    if lmi.constant is None and len(lmi.terms) == 1:
        name, parties, scale = lmi.terms[0]
        if parties is None and scale == 1.0:
            return name
    return None


def _compile(p: SdpProblem, faces: Mapping[str, np.ndarray] | None = None) -> _Compiled:
    """``faces[name] = V`` restricts ``X_name = V Y V^H`` with ``Y >= 0`` of size ``V.shape[1]``."""
    real = p.is_real()
    faces = faces or {}
    offsets, bases, small, start = {}, {}, {}, []
    pos = 0
    for name, d in p.dims.items():
        if name in faces:
            V = faces[name]
            small[name] = _basis(V.shape[1], real)
            B = np.einsum("ia,kab,jb->kij", V, small[name], V.conj())
        else:
            B = _basis(d, real)
        bases[name] = B
        offsets[name] = slice(pos, pos + len(B))
        pos += len(B)
        start.append(np.einsum("kij,ji->k", B, p.starts[name]).real)
    nx = pos

    def row(coeffs):
        r = np.zeros(nx)
        for name, M in coeffs.items():
            r[offsets[name]] = np.einsum("kij,ji->k", bases[name], M).real
        return r

    c = row(p.objective)
    A = np.array([row(co) for co, _, _ in p.equalities]).reshape(-1, nx)
    b = np.array([rhs for _, rhs, _ in p.equalities])
    consts, coefs, labels = [], [], []
    for lmi in p.lmis:
        own = _own_psd(lmi)
        if own in small:
            G = np.zeros((nx,) + small[own].shape[1:], dtype=complex)
            G[offsets[own]] = small[own]
            consts.append(np.zeros(small[own].shape[1:], dtype=complex))
            coefs.append(G)
            labels.append(lmi.label)
            continue
        d = p.dims[lmi.terms[0][0]] if lmi.terms else lmi.constant.shape[0]
        G = np.zeros((nx, d, d), dtype=complex)
        for name, parties, scale in lmi.terms:
            G[offsets[name]] += scale * _apply(bases[name], parties)
        const = np.zeros((d, d), dtype=complex) if lmi.constant is None else lmi.constant.astype(complex)
        consts.append(const)
        coefs.append(G)
        labels.append(lmi.label)
    return _Compiled(real, offsets, bases, c, A, b, consts, coefs, labels, np.concatenate(start) if start else np.zeros(0))


class _Barrier:
    """``-sum log det F_k(z) - log(R^2 - |z|^2)`` with ``F_k(z) = F_k + sum_j z_j G_kj``."""

    def __init__(self, consts, coefs, radius):
        self.consts = consts
        self.coefs = coefs
        self.flat = [G.reshape(G.shape[0], -1) for G in coefs]
        self.r2 = radius * radius
        self.nu = sum(F.shape[0] for F in consts) + 1

    def matrices(self, z):
        return [F + (z @ Gf).reshape(F.shape) for F, Gf in zip(self.consts, self.flat)]

    def value(self, z):
        """Barrier value, or ``inf`` outside the domain (Cholesky test)."""
        rest = self.r2 - z @ z
        if rest <= 0:
            return np.inf
        total = -np.log(rest)
        for M in self.matrices(z):
            try:
                L = np.linalg.cholesky(M)
            except np.linalg.LinAlgError:
                return np.inf
            diag = np.real(np.diag(L))
            if np.any(diag <= 0):
                return np.inf
            total -= 2.0 * np.log(diag).sum()
        return total

    def derivatives(self, z):
        m = z.size
        g = np.zeros(m)
        H = np.zeros((m, m))
        for M, G in zip(self.matrices(z), self.coefs):
            w, V = eigendecompose(M, check=False)
            if w[0] <= 0:
                raise FloatingPointError("left the barrier domain")
            S = (V * (1.0 / np.sqrt(w))) @ V.conj().T
            W = S @ G @ S
            g -= np.einsum("jii->j", W).real
            Wf = W.reshape(m, -1)
            H += (Wf @ Wf.conj().T).real
        rest = self.r2 - z @ z
        g += 2.0 * z / rest
        H += 2.0 * np.eye(m) / rest + 4.0 * np.outer(z, z) / rest**2
        return g, H

    def min_eigs(self, z):
        return [eigendecompose(M, check=False)[0][0] for M in self.matrices(z)]


def _newton_direction(H, g):
    """``-H^{-1} g`` with diagonal scaling; near-singular directions are dropped."""
    d = 1.0 / np.sqrt(np.maximum(np.diag(H), 1e-300))
    Hs = H * d[:, None] * d[None, :]
    gs = g * d
    try:
        L = np.linalg.cholesky(Hs)
        y = np.linalg.solve(L.T, np.linalg.solve(L, gs))
        if np.all(np.isfinite(y)):
            return -d * y
    except np.linalg.LinAlgError:
        pass
    w, V = np.linalg.eigh(Hs)
    keep = w > 1e-13 * w[-1]
    return -d * (V[:, keep] @ ((V[:, keep].T @ gs) / w[keep]))


def _center(bar: _Barrier, c, t, z, max_steps):
    """Damped Newton minimization of ``t c.z + barrier(z)``; returns (z, steps, converged)."""
    bv = bar.value(z)
    for step in range(max_steps):
        g, H = bar.derivatives(z)
        g = g + t * c
        dz = _newton_direction(H, g)
        dec = -(g @ dz)
        if dec / 2.0 <= 1e-10:
            return z, step, True
        slope = t * (c @ dz)
        alpha = 1.0
        while True:
            zn = z + alpha * dz
            bn = bar.value(zn)
            # compare differences: t c.z itself is too large to difference at big t
            if alpha * slope + (bn - bv) <= -0.01 * alpha * dec:
                break
            alpha *= 0.5
            if alpha < 1e-14:
                return z, step, False
        z, bv = zn, bn
    return z, max_steps, False


def _barrier_solve(bar: _Barrier, c, z, t0=1.0, stop=None):
    t = t0
    steps = 0
    for outer in range(MAX_OUTER):
        z, k, ok = _center(bar, c, t, z, MAX_NEWTON)
        steps += k
        if not ok:
            logger.debug("centering stalled at t=%g", t)
        if stop is not None and stop(z, t):
            return z, t, steps, True
        if bar.nu / t < GAP_TOL:
            return z, t, steps, True
        t /= MU_FACTOR
    return z, t, steps, False


def solve_sdp(p: SdpProblem) -> SdpSolution:
    """Solve ``p``; the objective is accurate to ``~1e-7`` on problems with a
    strictly feasible interior.

    Without an interior point, variables whose own ``X >= 0`` block is
    singular on the whole feasible set are restricted to the range found by
    phase 1 (facial reduction) and the problem is re-solved.  If no such
    block exists the LMIs are relaxed by ``~1e-8`` and ``relaxed=True``.
    """
    if not p.lmis:
        raise ValueError("problem has no semidefinite constraint")
    return _solve(p, {}, 0)


FACE_TOL = 1e-5
MAX_REDUCTIONS = 4


def _solve(p: SdpProblem, faces: dict, depth: int) -> SdpSolution:
    cp = _compile(p, faces)
    nx = cp.c.size
    # equality elimination: x = x_p + N z
    if cp.A.shape[0]:
        U, sv, Vt = np.linalg.svd(cp.A)
        rank = int(np.sum(sv > 1e-10 * max(1.0, sv.max(initial=0.0))))
        x_p = cp.x_start - np.linalg.pinv(cp.A, rcond=1e-10) @ (cp.A @ cp.x_start - cp.b)
        N = Vt[rank:].T
        eq_res = np.abs(cp.A @ x_p - cp.b).max()
        if eq_res > EQ_TOL:
            return SdpSolution(SdpStatus.INFEASIBLE, message="linear constraints are inconsistent",
                               equality_residual=float(eq_res))
    else:
        x_p = cp.x_start.copy()
        N = np.eye(nx)
    m = N.shape[1]

    consts, coefs, labels = [], [], []
    for F0, G, label in zip(cp.lmi_const, cp.lmi_coef, cp.labels):
        Gz = np.tensordot(N.T, G, axes=1)
        F = F0 + np.tensordot(x_p, G, axes=1)
        if m == 0 or np.abs(Gz).max(initial=0.0) <= 1e-12:
            lo = eigendecompose(F, check=False)[0][0]
            if lo < -PSD_TOL:
                return SdpSolution(SdpStatus.INFEASIBLE, message=f"fixed constraint {label} has eigenvalue {lo:.3g}")
            continue
        consts.append(F)
        coefs.append(Gz)
        labels.append(label)

    c_z = N.T @ cp.c
    z = np.zeros(m)
    relaxed = False
    steps = 0
    gap = 0.0

    if consts:
        scale = 1.0 + max(np.abs(F).max() for F in consts)
        radius = 1e4 * scale
        margin = min(eigendecompose(F, check=False)[0][0] for F in consts)
        if margin <= 1e-8 * scale:
            z, s_at, s_best, k = _phase_one(consts, coefs, radius, margin)
            steps += k
            # boundary data within the PSD tolerance is handled by relaxation
            if s_best < -PSD_TOL * scale:
                return SdpSolution(SdpStatus.INFEASIBLE, newton_steps=steps,
                                   message=f"no feasible point (phase-1 optimum {s_best:.3g})")
            if s_at <= INTERIOR_TOL * scale:
                new_faces = _find_faces(p, cp, x_p + N @ z, faces) if depth < MAX_REDUCTIONS else None
                if new_faces:
                    sol = _solve(p, new_faces, depth + 1)
                    sol.newton_steps += steps
                    return sol
                relaxed = True
                delta = RELAX * scale + 2.0 * max(0.0, -s_at)
                consts = [F + delta * np.eye(F.shape[0]) for F in consts]
        bar = _Barrier(consts, coefs, radius)
        z, t, k, ok = _barrier_solve(bar, c_z, z)
        steps += k
        gap = bar.nu / t
        status = SdpStatus.OPTIMAL if ok else SdpStatus.MAX_ITER
    else:
        status = SdpStatus.OPTIMAL

    x = x_p + N @ z
    values = {}
    for name, sl in cp.offsets.items():
        X = np.tensordot(x[sl], cp.bases[name], axes=1)
        values[name] = X.real if cp.real else X
    sol = SdpSolution(status, values, float(cp.c @ x), gap, relaxed=relaxed, newton_steps=steps)
    # independent residual re-check on the reconstructed matrices
    sol.min_eigenvalues = psd_check(values, p)
    if p.equalities:
        res = [
            sum(np.trace(A @ values[k]).real for k, A in coeffs.items()) - rhs
            for coeffs, rhs, _ in p.equalities
        ]
        sol.equality_residual = float(np.abs(res).max())
    else:
        sol.equality_residual = 0.0
    if sol.status is SdpStatus.OPTIMAL:
        worst = min(sol.min_eigenvalues.values())
        if worst < -PSD_TOL or sol.equality_residual > EQ_TOL:
            sol.status = SdpStatus.MAX_ITER
            sol.message = f"residual check failed (min eig {worst:.3g}, eq {sol.equality_residual:.3g})"
    return sol


def _find_faces(p: SdpProblem, cp: _Compiled, x, faces):
    """Ranges of variables whose ``X >= 0`` block is nearly singular at the
    phase-1 point; ``None`` when there is nothing to reduce."""
    out, changed = dict(faces), False
    owners = {_own_psd(l) for l in p.lmis} - {None}
    for name in owners:
        X = np.tensordot(x[cp.offsets[name]], cp.bases[name], axes=1)
        w, V = eigendecompose(hermitize(X, tol=1e-8), check=False)
        keep = w > FACE_TOL * max(1.0, w[-1])
        if 0 < keep.sum() < (faces[name].shape[1] if name in faces else p.dims[name]):
            Vk = V[:, keep]
            out[name] = Vk.real if cp.real else Vk
            changed = True
    return out if changed else None


def _phase_one(consts, coefs, radius, margin):
    """Maximize ``s`` subject to ``F_k(z) >= s I``.

    Returns ``(z, s_at_z, upper_bound_on_optimum, newton_steps)``.

    Stops early once a centered point with ``s > 0`` is found.
    """
    m = coefs[0].shape[0]
    s_cap = 1.0
    s0 = min(margin, s_cap) - 1.0
    ext_coefs = []
    for F, G in zip(consts, coefs):
        d = F.shape[0]
        Gs = np.concatenate([G, -np.eye(d)[None]], axis=0)
        ext_coefs.append(Gs)
    # s <= s_cap as a 1x1 block
    cap_G = np.zeros((m + 1, 1, 1), dtype=complex)
    cap_G[m, 0, 0] = -1.0
    bar = _Barrier(list(consts) + [np.array([[s_cap]], dtype=complex)], ext_coefs + [cap_G], radius)
    c = np.zeros(m + 1)
    c[m] = -1.0
    y = np.concatenate([np.zeros(m), [s0]])

    def stop(y, t):
        return y[m] > 1e-6

    y, t, steps, _ = _barrier_solve(bar, c, y, stop=stop)
    s = y[m]
    # the phase-1 optimum is at most s + nu/t
    return y[:m], s, (s if s > 1e-6 else s + bar.nu / t), steps


def psd_check(values: Mapping[str, np.ndarray], p: SdpProblem) -> dict[str, float]:
    """Minimum eigenvalue of every LMI of ``p`` at ``values``."""
    out = {}
    for lmi in p.lmis:
        d = p.dims[lmi.terms[0][0]] if lmi.terms else lmi.constant.shape[0]
        M = np.zeros((d, d), dtype=complex) if lmi.constant is None else lmi.constant.astype(complex)
        for name, parties, scale in lmi.terms:
            X = np.asarray(values[name])
            M = M + scale * (X if parties is None else partial_transpose(X, parties))
        out[lmi.label] = float(eigendecompose(M)[0][0])
    return out
