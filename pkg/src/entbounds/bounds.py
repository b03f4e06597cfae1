"""Lower bounds on fidelity, Global Robustness of Entanglement (GRE) and
logarithmic negativity from stabilizer-generator expectation values.

Symmetric routes work on the group-diagonal coefficients of
:mod:`entbounds.symstate` (``operator = sum_i c_i G(i)``), in which every
positivity constraint becomes ``2^n`` linear inequalities on the Walsh
transform.  Under this normalization ``tr(sigma) = 2^n * d_0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import lp
from .linalg import eigendecompose, partial_transpose as dense_pt
from .pauli import PauliString, StabilizerSpec
from .sdp import SdpProblem, SdpStatus, solve_sdp
from .symstate import EIG_TOL, SymState, walsh_matrix

GAP_TOL = 1e-6
CERT_TOL = 1e-12
DENSE_MAX_QUBITS = 4


class Quantity(str, Enum):
    FIDELITY = "fidelity"
    GRE = "gre"
    LOG_NEGATIVITY = "negativity"


class Method(str, Enum):
    CLOSED_FORM = "closed"
    SYMMETRIC_LP = "lp"
    GENERAL_SDP = "sdp"


class InfeasibleDataError(ValueError):
    """No quantum state reproduces the measured expectation values."""

    def __init__(self, detail: str = ""):
        msg = "measurement data inconsistent with any quantum state"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class UnsupportedSpecError(ValueError):
    pass


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class MeasurementRecord:
    """Generator outcomes ``a_k = tr(rho K_k)`` plus optional extra Pauli data."""

    spec: StabilizerSpec
    outcomes: tuple[float, ...]
    extra_observables: tuple[tuple[PauliString, float], ...] = ()

    def __post_init__(self):
        a = tuple(float(v) for v in self.outcomes)
        if len(a) != self.spec.n:
            raise ValueError(f"expected {self.spec.n} generator outcomes, got {len(a)}")
        for k, v in enumerate(a):
            if not math.isfinite(v) or abs(v) > 1.0:
                raise ValueError(f"outcome out of physical range: a[{k + 1}] = {v}")
        extras = []
        for p, v in self.extra_observables:
            if isinstance(p, str):
                p = PauliString.from_label(p)
            v = float(v)
            if p.n != self.spec.n:
                raise ValueError(f"observable {p.label} acts on {p.n} qubits, expected {self.spec.n}")
            if not math.isfinite(v) or abs(v) > 1.0:
                raise ValueError(f"outcome out of physical range: <{p.label}> = {v}")
            extras.append((p, v))
        object.__setattr__(self, "outcomes", a)
        object.__setattr__(self, "extra_observables", tuple(extras))

    @property
    def n(self) -> int:
        return self.spec.n

    def abs_outcomes(self) -> np.ndarray:
        return np.abs(np.asarray(self.outcomes))


@dataclass
class BoundResult:
    quantity: Quantity
    value: float
    method: Method
    certificate: dict | None = None
    diagnostics: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)


@dataclass
class CertificateCheck:
    """Outcome of checking an analytic dual point.

    ``margins`` holds the smallest eigenvalue of each operator that must be
    positive semidefinite; the check passes when all are ``>= -tol``.
    """

    name: str
    margins: dict[str, float]
    tol: float = CERT_TOL
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v >= -self.tol for v in self.margins.values())

    @property
    def violations(self) -> list[str]:
        return [k for k, v in self.margins.items() if v < -self.tol]


def _record(m, spec=None) -> MeasurementRecord:
    if isinstance(m, MeasurementRecord):
        return m
    if spec is None:
        raise TypeError("pass a MeasurementRecord or (outcomes, spec)")
    return MeasurementRecord(spec, tuple(m))


# ---------------------------------------------------------------------------
# symmetric linear programs

def _cuts(spec: StabilizerSpec) -> list[tuple[int, np.ndarray]]:
    """Single-qubit partial transposes with distinct sign patterns."""
    out, seen = [], set()
    for q in range(spec.n):
        s = spec.pt_signs([q])
        key = s.tobytes()
        if key not in seen:
            seen.add(key)
            out.append((q, s))
    return out


def _fixed_from_outcomes(spec: StabilizerSpec, a) -> dict[int, float]:
    N = spec.dim
    fixed = {0: 1.0 / N}
    for k, v in enumerate(a):
        fixed[1 << k] = float(v) / N
    return fixed


def compile_fidelity_lp(spec: StabilizerSpec, outcomes) -> lp.LinearProgram:
    """``min sum_i c_i`` over symmetric states with the given generator outcomes."""
    N = spec.dim
    W = walsh_matrix(spec.n)
    prog = lp.LinearProgram(np.ones(N), lower=-np.inf, upper=np.inf,
                            names=[f"c[{i}]" for i in range(N)])
    prog.add_constraints(W, ">=", 0.0, prefix="rho_eig")
    for i, v in _fixed_from_outcomes(spec, outcomes).items():
        row = np.zeros(N)
        row[i] = 1.0
        prog.add_constraint(row, "=", v, f"fix_c[{i}]")
    return prog


def compile_fidelity_dual_lp(spec: StabilizerSpec, outcomes) -> lp.LinearProgram:
    """``max lam_0 + sum_k lam_k a_k`` s.t. ``|phi><phi| - lam_0 - sum_k lam_k K_k >= 0``
    (stated as a minimization of the negated objective)."""
    n, N = spec.n, spec.dim
    W = walsh_matrix(n)
    cols = [0] + [1 << k for k in range(n)]
    obj = -np.concatenate([[1.0], np.asarray(outcomes, dtype=float)])
    prog = lp.LinearProgram(obj, lower=-np.inf, upper=np.inf,
                            names=[f"lambda[{k}]" for k in range(n + 1)])
    target = np.zeros(N)
    target[0] = 1.0
    prog.add_constraints(W[:, cols], "<=", target, prefix="chi_minus_xi")
    return prog


def compile_gre_lp(spec: StabilizerSpec, fixed: Mapping[int, float]) -> lp.LinearProgram:
    """GRE primal over symmetric ``rho`` (coefficients ``c``) and ``sigma`` (``d``).

    Variables are ``[c_0..c_{N-1}, d_0..d_{N-1}]``; ``fixed`` pins chosen
    ``c_i``.  The objective ``N d_0`` equals ``tr(sigma)``.
    """
    N = spec.dim
    W = walsh_matrix(spec.n)
    Z = np.zeros_like(W)
    obj = np.zeros(2 * N)
    obj[N] = N
    prog = lp.LinearProgram(obj, lower=-np.inf, upper=np.inf,
                            names=[f"c[{i}]" for i in range(N)] + [f"d[{i}]" for i in range(N)])
    prog.add_constraints(np.hstack([W, Z]), ">=", 0.0, prefix="rho_eig")
    prog.add_constraints(np.hstack([Z, W]), ">=", 0.0, prefix="sigma_eig")
    for q, s in _cuts(spec):
        Ws = W * s[None, :]
        prog.add_constraints(np.hstack([Ws, Ws]), ">=", 0.0, prefix=f"pt{q}_eig")
    for i, v in sorted(fixed.items()):
        row = np.zeros(2 * N)
        row[i] = 1.0
        prog.add_constraint(row, "=", v, f"fix_c[{i}]")
    return prog


def compile_gre_dual_lp(spec: StabilizerSpec, expectations: Mapping[int, float]) -> lp.LinearProgram:
    """Dual GRE program with symmetric ``eta_alpha``.

    ``max sum_i mu_i a_i`` s.t. ``eta_alpha >= 0``, ``sum eta_alpha^T_alpha <= 1`` and
    ``sum eta_alpha^T_alpha + sum_i mu_i G(i) <= 0``; ``expectations`` maps a group
    index ``i`` to ``a_i = tr(rho G(i))`` and must contain index 0 (with value 1).
    Variables are ``[mu_i for sorted i] + [eta_alpha coefficients per cut]``.
    """
    N = spec.dim
    W = walsh_matrix(spec.n)
    keys = sorted(expectations)
    if 0 not in expectations:
        raise ValueError("expectations must include the identity (index 0)")
    cuts = _cuts(spec)
    nmu = len(keys)
    nv = nmu + N * len(cuts)
    obj = np.zeros(nv)
    obj[:nmu] = [-expectations[i] for i in keys]
    names = [f"mu[{i}]" for i in keys]
    names += [f"eta{q}[{i}]" for q, _ in cuts for i in range(N)]
    prog = lp.LinearProgram(obj, lower=-np.inf, upper=np.inf, names=names)
    pt_block = np.zeros((N, nv))
    for k, (q, s) in enumerate(cuts):
        sl = slice(nmu + k * N, nmu + (k + 1) * N)
        rows = np.zeros((N, nv))
        rows[:, sl] = W
        prog.add_constraints(rows, ">=", 0.0, prefix=f"eta{q}_eig")
        pt_block[:, sl] = W * s[None, :]
    prog.add_constraints(pt_block, "<=", 1.0, prefix="unit_minus_pt")
    neg = pt_block.copy()
    neg[:, :nmu] = W[:, keys]
    prog.add_constraints(neg, "<=", 0.0, prefix="neg_def")
    return prog


def _solve_pair(primal, dual, label):
    ps = lp.solve(primal)
    if ps.status is lp.Status.INFEASIBLE:
        raise InfeasibleDataError(f"{label} primal LP is infeasible")
    if not ps.optimal:
        raise SolverError(f"{label} primal LP ended with status {ps.status.value}")
    ds = lp.solve(dual)
    if not ds.optimal:
        raise SolverError(f"{label} dual LP ended with status {ds.status.value}")
    primal_value = ps.objective_value
    dual_value = -ds.objective_value
    gap = abs(primal_value - dual_value)
    if gap > GAP_TOL:
        raise SolverError(f"{label}: primal {primal_value:.10g} and dual {dual_value:.10g} disagree")
    pc = lp.verify_certificate(primal, ps.x, ps.dual_values)
    dc = lp.verify_certificate(dual, ds.x, ds.dual_values)
    diag = {
        "primal_objective": primal_value,
        "dual_objective": dual_value,
        "duality_gap": gap,
        "simplex_duality_gap": ps.duality_gap,
        "primal_residual": max(pc.primal_residual, dc.dual_residual),
        "dual_residual": max(pc.dual_residual, dc.primal_residual),
        "iterations": ps.iterations + ds.iterations,
        "certificate_checks_passed": pc.passed and dc.passed,
    }
    return ps, ds, diag


def fidelity_bound_lp(m, spec=None) -> BoundResult:
    """Least fidelity with the target stabilizer state over all states with the
    measured generator outcomes (``|a_k|``: signs are absorbed by local Paulis)."""
    rec = _record(m, spec)
    a = rec.abs_outcomes()
    primal = compile_fidelity_lp(rec.spec, a)
    dual = compile_fidelity_dual_lp(rec.spec, a)
    ps, ds, diag = _solve_pair(primal, dual, "fidelity")
    lam = ds.x
    value = max(0.0, diag["primal_objective"])
    return BoundResult(
        Quantity.FIDELITY, value, Method.SYMMETRIC_LP,
        certificate={"lambda_0": float(lam[0]), "lambda": [float(v) for v in lam[1:]]},
        diagnostics=diag,
    )


def gre_bound_lp(m, spec=None, absolute: bool = True) -> BoundResult:
    """Minimum GRE over all symmetric states reproducing the generator outcomes.

    With ``absolute=False`` the raw signed outcomes are compiled directly; the
    result is identical because sign flips are local Pauli rotations.
    """
    rec = _record(m, spec)
    a = rec.abs_outcomes() if absolute else np.asarray(rec.outcomes)
    fixed = _fixed_from_outcomes(rec.spec, a)
    expectations = {i: v * rec.spec.dim for i, v in fixed.items()}
    return _gre_lp(rec.spec, fixed, expectations)


def _gre_lp(spec, fixed, expectations) -> BoundResult:
    primal = compile_gre_lp(spec, fixed)
    dual = compile_gre_dual_lp(spec, expectations)
    ps, ds, diag = _solve_pair(primal, dual, "GRE")
    keys = sorted(expectations)
    nmu = len(keys)
    N = spec.dim
    cuts = _cuts(spec)
    cert = {
        "mu": {int(i): float(v) for i, v in zip(keys, ds.x[:nmu])},
        "eta": {int(q): ds.x[nmu + k * N: nmu + (k + 1) * N].tolist() for k, (q, _) in enumerate(cuts)},
        "sigma_coeffs": ps.x[N:].tolist(),
        "rho_coeffs": ps.x[:N].tolist(),
    }
    value = max(0.0, diag["primal_objective"])
    return BoundResult(Quantity.GRE, value, Method.SYMMETRIC_LP, certificate=cert, diagnostics=diag)


def gre_exact_symmetric(state: SymState) -> BoundResult:
    """Exact GRE of a stabilizer-diagonal density matrix."""
    ev = state.eigenvalues()
    if abs(state.trace() - 1.0) > EIG_TOL or ev.min() < -EIG_TOL:
        raise ValueError("state is not a valid density matrix")
    spec = state.spec
    fixed = {i: float(c) for i, c in enumerate(state.coeffs)}
    expectations = {i: spec.dim * c for i, c in fixed.items()}
    return _gre_lp(spec, fixed, expectations)


# ---------------------------------------------------------------------------
# closed forms

def fidelity_bound_closed(m, spec=None) -> BoundResult:
    """``max[(sum_k |a_k| - n + 2) / 2, 0]`` for any stabilizer group."""
    rec = _record(m, spec)
    a = rec.abs_outcomes()
    value = max(0.5 * (a.sum() - rec.n + 2.0), 0.0)
    # n = 1 is not a meaningful case; keep the value a probability
    value = min(value, 1.0)
    return BoundResult(
        Quantity.FIDELITY, float(value), Method.CLOSED_FORM,
        certificate={"lambda_0": 1.0 - rec.n / 2.0, "lambda": [0.5] * rec.n},
    )


def closed_form_family(spec: StabilizerSpec) -> str | None:
    """``"pair"``, ``"triangle"``, ``"box"`` or ``None`` when no closed GRE form applies."""
    if spec.n == 2 and (spec.family == "ghz" or spec.edges):
        return "pair"
    if spec.family != "graph":
        return None
    deg = np.asarray(spec.adjacency).sum(axis=1)
    if spec.n == 3 and len(spec.edges) == 3:
        return "triangle"
    if spec.n == 4 and len(spec.edges) == 4 and np.all(deg == 2):
        # 2-regular on 4 vertices is necessarily the 4-cycle
        return "box"
    return None


def gre_bound_closed(m, spec=None) -> BoundResult:
    """Closed-form GRE bounds for the 2-qubit pair, 3-qubit triangle and 4-qubit box.

    The box value maximizes the pair term over all four edges of the square.
    """
    rec = _record(m, spec)
    kind = closed_form_family(rec.spec)
    if kind is None:
        raise UnsupportedSpecError(f"no closed form for {rec.spec.describe()}; use the LP path")
    a = rec.abs_outcomes()
    if kind == "pair":
        value = max(0.0, a[0] + a[1] - 1.0)
        cert = {"mu": [-1.0, 1.0, 1.0]}
    elif kind == "triangle":
        value = max(0.0, a.sum() - a.min() - 1.0)
        cert = None
    else:
        pair = max(a[u] + a[v] - 1.0 for u, v in rec.spec.edges)
        value = max(0.0, pair, 2.0 * a.sum() - 5.0)
        cert = {"mu_pair": [-1.0, 1.0, 1.0, 0.0, 0.0], "mu_all": [-5.0, 2.0, 2.0, 2.0, 2.0]}
    return BoundResult(Quantity.GRE, float(value), Method.CLOSED_FORM, certificate=cert,
                       diagnostics={"family": kind})


def negativity_bound_closed(ax: float, az: float, ay: float | None = None,
                            variant: str = "printed") -> BoundResult:
    """Two-qubit logarithmic-negativity lower bound (base-2 logarithm).

    ``max(0, log2(|ax| + |az|))`` from ``XX``/``ZZ`` data.  With ``YY`` data
    the ``"printed"`` variant is ``max(0, log2(1 + |ax| + |ay| + |az|))`` and
    the ``"halved"`` variant ``max(0, log2((1 + |ax| + |ay| + |az|) / 2))``;
    only the latter equals the negativity of a Bell state at full correlation.
    """
    vals = [ax, az] + ([] if ay is None else [ay])
    for v in vals:
        if not math.isfinite(v) or abs(v) > 1.0:
            raise ValueError(f"outcome out of physical range: {v}")
    if variant not in ("printed", "halved"):
        raise ValueError(f"unknown variant {variant!r}")
    if ay is None:
        arg = abs(ax) + abs(az)
        formula = "log2(|ax|+|az|)"
    else:
        arg = 1.0 + abs(ax) + abs(ay) + abs(az)
        formula = "log2(1+|ax|+|ay|+|az|)"
        if variant == "halved":
            arg /= 2.0
            formula = "log2((1+|ax|+|ay|+|az|)/2)"
    value = max(0.0, math.log2(arg)) if arg > 0 else 0.0
    return BoundResult(Quantity.LOG_NEGATIVITY, value, Method.CLOSED_FORM,
                       diagnostics={"log_base": 2, "formula": formula, "variant": variant})


# ---------------------------------------------------------------------------
# certificates

def _eigs(spec, coeffs):
    return SymState(spec, coeffs).eigenvalues()


def fidelity_dual_certificate(spec: StabilizerSpec) -> CertificateCheck:
    """Check ``lam_0 = 1 - n/2``, ``lam_k = 1/2``: ``|phi><phi| - Xi >= 0`` with
    ``Xi = lam_0 + sum_k lam_k K_k``, and the top eigenvalue is tight."""
    n, N = spec.n, spec.dim
    lam0, lam = 1.0 - n / 2.0, 0.5
    xi = np.zeros(N)
    xi[0] = lam0
    for k in range(n):
        xi[1 << k] = lam
    chi = np.full(N, 1.0 / N)
    xi_eigs = _eigs(spec, xi)
    diff = _eigs(spec, chi - xi)
    return CertificateCheck(
        f"fidelity dual point, {spec.describe()}",
        {"chi - xi": float(diff.min()), "tight at j=0": -abs(float(diff[0]))},
        details={
            "lambda_0": lam0,
            "lambda": [lam] * n,
            "xi_top_eigenvalue": float(xi_eigs[0]),
            "xi_max_other": float(xi_eigs[1:].max()) if N > 1 else None,
        },
    )


def _parse_table(table: Mapping[str, Sequence[float]], n: int) -> np.ndarray:
    """Rows keyed by bit strings ``i_1 i_2 ... i_n`` (qubit 1 first)."""
    out = np.zeros((len(next(iter(table.values()))), 1 << n))
    for label, row in table.items():
        if len(label) != n or set(label) - {"0", "1"}:
            raise ValueError(f"bad index label {label!r}")
        idx = sum(int(b) << k for k, b in enumerate(label))
        out[:, idx] = row
    return out


# eta_alpha coefficients (alpha = 1..4) of the box-cluster dual point, in units of 1/16
BOX_TABLE = {
    "0000": (3, 3, 3, 3), "1000": (-1, -2, 1, -2), "0100": (-2, -1, -2, 1),
    "0010": (1, -2, -1, -2), "0001": (-2, 1, -2, -1), "1100": (1, 1, -1, -1),
    "1010": (-3, 1, -3, 1), "1001": (1, -1, -1, 1), "0110": (-1, 1, 1, -1),
    "0101": (1, -3, 1, -3), "0011": (-1, -1, 1, 1), "1110": (2, -1, 2, 1),
    "1101": (-1, 2, 1, 2), "1011": (2, 1, 2, -1), "0111": (1, 2, -1, 2),
    "1111": (-1, -1, -1, -1),
}
BOX_MU = (-5.0, 2.0, 2.0, 2.0, 2.0)


def check_gre_dual_point(spec: StabilizerSpec, mu: Sequence[float], etas: Mapping[int, np.ndarray],
                         name: str = "GRE dual point") -> CertificateCheck:
    """Check ``eta_a >= 0``, ``sum_a eta_a^T_a <= 1`` and ``sum_a eta_a^T_a + mu_0 + sum_k mu_k K_k <= 0``.

    ``mu`` is ``(mu_0, mu_1, ..., mu_n)``; ``etas`` maps a 0-based qubit to
    its symmetric coefficient vector.  The dual objective at outcomes ``a``
    is ``mu_0 + sum_k mu_k a_k``.
    """
    n, N = spec.n, spec.dim
    margins = {}
    total_pt = np.zeros(N)
    for q, eta in sorted(etas.items()):
        eta = np.asarray(eta, dtype=float)
        margins[f"eta_{q + 1} >= 0"] = float(_eigs(spec, eta).min())
        total_pt += spec.pt_signs([q]) * eta
    pt_eigs = _eigs(spec, total_pt)
    margins["1 - sum eta^T >= 0"] = float((1.0 - pt_eigs).min())
    op = total_pt.copy()
    op[0] += mu[0]
    for k in range(n):
        op[1 << k] += mu[k + 1]
    margins["-(sum eta^T + sum mu K) >= 0"] = float((-_eigs(spec, op)).min())
    return CertificateCheck(name, margins, details={"mu": list(map(float, mu))})


def verify_box_cluster_certificate(table: Mapping[str, Sequence[float]] | None = None,
                                   mu: Sequence[float] = BOX_MU) -> list[CertificateCheck]:
    """Verify both analytic dual points of the 4-qubit box cluster.

    The first check uses ``table`` (default :data:`BOX_TABLE`, entries in
    sixteenths) with ``mu``; the second uses the two-qubit-style point
    ``mu = (-1, 1, 1, 0, 0)`` with ``eta_1 = eta_2`` and ``eta_3 = eta_4 = 0``.
    """
    spec = StabilizerSpec.ring(4)
    coeffs = _parse_table(table or BOX_TABLE, 4) / 16.0
    full = check_gre_dual_point(spec, mu, {q: coeffs[q] for q in range(4)}, "box cluster, table dual point")
    eta1 = np.zeros(16)
    eta1[0b0000] = eta1[0b0011] = 0.25
    eta1[0b0001] = eta1[0b0010] = -0.25
    pair = check_gre_dual_point(spec, (-1.0, 1.0, 1.0, 0.0, 0.0),
                                {0: eta1, 1: eta1, 2: np.zeros(16), 3: np.zeros(16)},
                                "box cluster, two-qubit dual point")
    return [full, pair]


def two_qubit_dual_point() -> tuple[np.ndarray, np.ndarray]:
    """``(mu_0, mu_1, mu_2) = (-1, 1, 1)`` and ``eta`` coefficients ``(1/2, -1/2, -1/2, 1/2)``."""
    return np.array([-1.0, 1.0, 1.0]), np.array([0.5, -0.5, -0.5, 0.5])


# ---------------------------------------------------------------------------
# dense semidefinite route

def _single_cuts(n):
    # for two qubits the second cut is the full transpose of the first
    return [(0,)] if n == 2 else [(q,) for q in range(n)]


def gre_sdp_problem(n: int, observables: Iterable[tuple[np.ndarray, float]] = (),
                    rho: np.ndarray | None = None) -> SdpProblem:
    """Dense GRE program: minimize ``tr(sigma)`` subject to ``(rho + sigma)^T_q >= 0``
    for every qubit ``q``.  ``rho`` is a variable constrained by ``observables``
    (plus unit trace) unless a fixed density matrix is given."""
    d = 1 << n
    p = SdpProblem()
    p.add_variable("sigma", d, start=0.5 * np.eye(d))
    p.set_objective({"sigma": np.eye(d)})
    if rho is None:
        p.add_variable("rho", d, start=np.eye(d) / d)
        p.add_equality({"rho": np.eye(d)}, 1.0, "trace")
        for k, (A, v) in enumerate(observables):
            p.add_equality({"rho": A}, v, f"obs{k}")
        for cut in _single_cuts(n):
            p.add_lmi([("rho", cut), ("sigma", cut)], label=f"pt{cut[0]}")
    else:
        for cut in _single_cuts(n):
            p.add_lmi([("sigma", cut)], constant=dense_pt(rho, cut), label=f"pt{cut[0]}")
    return p


def _sdp_result(p, label, extra_diag=None) -> BoundResult:
    sol = solve_sdp(p)
    if sol.status is SdpStatus.INFEASIBLE:
        raise InfeasibleDataError(sol.message)
    if not sol.optimal:
        raise SolverError(f"{label}: SDP ended with status {sol.status.value} {sol.message}")
    diag = {
        "gap": sol.gap,
        "relaxed": sol.relaxed,
        "min_eigenvalues": sol.min_eigenvalues,
        "equality_residual": sol.equality_residual,
        "newton_steps": sol.newton_steps,
    }
    diag.update(extra_diag or {})
    return BoundResult(Quantity.GRE, max(0.0, sol.objective_value), Method.GENERAL_SDP,
                       certificate=None, diagnostics=diag)


def gre_bound_general(m, spec=None, include_generators: bool = True) -> BoundResult:
    """GRE lower bound from arbitrary Pauli data via a dense SDP (``n <= 4``)."""
    rec = _record(m, spec)
    n = rec.n
    if n > DENSE_MAX_QUBITS:
        raise ValueError(f"dense SDP route limited to {DENSE_MAX_QUBITS} qubits")
    obs = []
    if include_generators:
        obs += [(g.to_dense(), a) for g, a in zip(rec.spec.generators, rec.outcomes)]
    obs += [(p.to_dense(), v) for p, v in rec.extra_observables]
    return _sdp_result(gre_sdp_problem(n, obs), "GRE", {"observables": len(obs)})


def gre_exact_dense(rho) -> BoundResult:
    """Exact GRE of a dense ``2^n x 2^n`` density matrix (``n <= 4``)."""
    rho = np.asarray(rho)
    n = rho.shape[0].bit_length() - 1
    if (1 << n) != rho.shape[0] or n > DENSE_MAX_QUBITS:
        raise ValueError("expected a 2^n x 2^n matrix with n <= 4")
    w = eigendecompose(rho)[0]
    if w[0] < -EIG_TOL or abs(w.sum() - 1.0) > EIG_TOL:
        raise ValueError("not a density matrix")
    return _sdp_result(gre_sdp_problem(n, rho=rho), "GRE")


def log_negativity(rho, parties=(0,)) -> float:
    """``log2 || rho^T_parties ||_1`` of a dense density matrix."""
    return math.log2(float(np.abs(eigendecompose(dense_pt(np.asarray(rho), parties))[0]).sum()))


# ---------------------------------------------------------------------------
# routing

def compute_bound(m, quantity="gre", method="auto", spec=None, **options) -> BoundResult:
    """Dispatch to the closed form, symmetric LP or dense SDP route.

    ``method="auto"`` picks the closed form when one exists, the LP otherwise,
    and the SDP only when extra (non-generator) observables are present.
    """
    rec = _record(m, spec)
    quantity = Quantity(quantity)
    method = method if method == "auto" else Method(method)
    if quantity is Quantity.FIDELITY:
        if method == "auto":
            method = Method.CLOSED_FORM
        if method is Method.CLOSED_FORM:
            return fidelity_bound_closed(rec)
        if method is Method.SYMMETRIC_LP:
            return fidelity_bound_lp(rec)
        raise ValueError("fidelity bounds have no SDP route")
    if quantity is Quantity.LOG_NEGATIVITY:
        if method not in ("auto", Method.CLOSED_FORM):
            raise ValueError("negativity bounds are closed-form only")
        ax, az, ay = negativity_inputs(rec)
        return negativity_bound_closed(ax, az, ay, **options)
    if method == "auto":
        if rec.extra_observables:
            method = Method.GENERAL_SDP
        elif closed_form_family(rec.spec):
            method = Method.CLOSED_FORM
        else:
            method = Method.SYMMETRIC_LP
    if method is Method.CLOSED_FORM:
        return gre_bound_closed(rec)
    if method is Method.SYMMETRIC_LP:
        if rec.extra_observables:
            raise ValueError("the symmetric LP only uses generator outcomes; use method='sdp'")
        return gre_bound_lp(rec, **options)
    return gre_bound_general(rec)


def negativity_inputs(rec: MeasurementRecord) -> tuple[float, float, float | None]:
    """``(ax, az, ay)`` for two-qubit data: the generator outcomes plus the
    expectation of their product if it was measured."""
    if rec.n != 2:
        raise UnsupportedSpecError("negativity bounds need two-qubit data")
    ax, az = rec.outcomes
    prod = rec.spec.element(3)
    ay = None
    for p, v in rec.extra_observables:
        if p.x == prod.x and p.z == prod.z:
            ay = v
    return ax, az, ay
