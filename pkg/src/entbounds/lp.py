"""Dense two-phase tableau simplex.

Problems are stated as ``min c^T x`` subject to named rows ``a^T x (<=|=|>=) b``
and per-variable bounds.  Dual values follow the convention that the reduced
costs ``c - A^T y`` are nonnegative at a lower bound: a ``>=`` row has
``y >= 0``, a ``<=`` row has ``y <= 0``, an equality row is free.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9
CERT_TOL = 1e-8
BLAND_AFTER = 1000
MAX_COLUMNS = 60_000

_SENSES = {"<=": "<=", "le": "<=", "=": "=", "==": "=", "eq": "=", ">=": ">=", "ge": ">="}


class Status(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class LinearProgram:
    """A linear program built row by row.

    Parameters
    ----------
    objective : array_like
        Cost vector ``c`` (the program minimizes ``c^T x``).
    lower, upper : array_like, optional
        Variable bounds; ``-inf``/``inf`` for none.  Default ``x >= 0``.
    """

    def __init__(self, objective, lower=None, upper=None, names=None):
        c = np.asarray(objective, dtype=float).ravel()
        self.objective = c
        n = c.size
        self.lower = np.zeros(n) if lower is None else _broadcast(lower, n)
        self.upper = np.full(n, np.inf) if upper is None else _broadcast(upper, n)
        self.variable_names = list(names) if names is not None else [f"x{j}" for j in range(n)]
        self._rows: list[np.ndarray] = []
        self.senses: list[str] = []
        self._rhs: list[float] = []
        self.row_names: list[str] = []

    @property
    def num_vars(self) -> int:
        return self.objective.size

    @property
    def num_rows(self) -> int:
        return len(self._rows)

    @property
    def A(self) -> np.ndarray:
        if not self._rows:
            return np.zeros((0, self.num_vars))
        return np.vstack(self._rows)

    @property
    def b(self) -> np.ndarray:
        return np.asarray(self._rhs, dtype=float)

    def add_constraint(self, row, sense: str, rhs: float, name: str | None = None):
        a = np.asarray(row, dtype=float).ravel()
        if a.size != self.num_vars:
            raise ValueError(f"row has {a.size} entries, expected {self.num_vars}")
        try:
            sense = _SENSES[sense]
        except KeyError:
            raise ValueError(f"unknown relation {sense!r}") from None
        self._rows.append(a)
        self.senses.append(sense)
        self._rhs.append(float(rhs))
        self.row_names.append(name if name is not None else f"r{len(self._rows) - 1}")
        return self

    def add_constraints(self, rows, sense: str, rhs, prefix: str = "r"):
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        rhs = np.broadcast_to(np.asarray(rhs, dtype=float), (rows.shape[0],))
        for k, (a, v) in enumerate(zip(rows, rhs)):
            self.add_constraint(a, sense, v, f"{prefix}[{k}]")
        return self

    def validate(self):
        for name, arr in (("objective", self.objective), ("rhs", self.b), ("rows", self.A)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite entries in {name}")
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise ValueError("NaN variable bound")
        if np.any(self.lower == np.inf) or np.any(self.upper == -np.inf):
            raise ValueError("infinite bound on the wrong side")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")
        if len(self.variable_names) != self.num_vars:
            raise ValueError("variable name count mismatch")


def _broadcast(v, n):
    return np.broadcast_to(np.asarray(v, dtype=float), (n,)).copy()


@dataclass
class LpSolution:
    status: Status
    x: np.ndarray | None = None
    objective_value: float = float("nan")
    dual_values: np.ndarray | None = None
    dual_objective: float = float("nan")
    iterations: int = 0
    bland_engaged: bool = False

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    @property
    def duality_gap(self) -> float:
        return abs(self.objective_value - self.dual_objective)


@dataclass
class CertificateReport:
    """Residuals of a primal/dual pair.  ``passed`` iff every check is within ``tol``."""

    primal_residual: float
    dual_residual: float
    complementarity: float
    duality_gap: float
    primal_objective: float
    dual_objective: float
    tol: float = CERT_TOL
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


class _Tableau:
    """Standard form ``min c^T x, A x = b >= 0, x >= 0``.

    ``unit[i]`` names a column of ``A`` equal to ``e_i`` (a slack) or is -1,
    in which case row ``i`` gets an artificial column.
    """

    def __init__(self, A, b, c, unit):
        m, n = A.shape
        need = [i for i in range(m) if unit[i] < 0]
        T = np.zeros((m + 1, n + len(need) + 1))
        T[:m, :n] = A
        T[:m, -1] = b
        basis = np.array(unit, dtype=int)
        for k, i in enumerate(need):
            T[i, n + k] = 1.0
            basis[i] = n + k
        self.T = T
        self.m, self.n, self.na = m, n, len(need)
        self.basis = basis
        self.unit_cols = basis.copy()
        self.c = c
        self.iterations = 0
        self.bland = False
        self.bland_engaged = False

    def _set_costs(self, cost):
        # reduced-cost row: cost - c_B^T B^{-1} A; last entry holds -objective
        T = self.T
        T[-1, :-1] = cost
        T[-1, -1] = 0.0
        T[-1, :] -= cost[self.basis] @ T[:-1, :]

    def _pivot(self, r, j):
        T = self.T
        T[r, :] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        nz = np.flatnonzero(col)
        T[nz, :] -= np.outer(col[nz], T[r, :])
        self.basis[r] = j
        self.iterations += 1

    def _entering(self, allowed):
        d = self.T[-1, :-1]
        cand = np.flatnonzero(allowed & (d < -PIVOT_TOL))
        if cand.size == 0:
            return None
        if self.bland:
            return int(cand[0])
        # argmin returns the lowest index among ties
        return int(cand[np.argmin(d[cand])])

    def _leaving(self, j):
        col = self.T[:-1, j]
        rhs = self.T[:-1, -1]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            return None
        ratios = np.maximum(rhs[rows], 0.0) / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        # lowest basic variable index among ties
        return int(tied[np.argmin(self.basis[tied])])

    def run(self, allowed, max_iter):
        degenerate = 0
        while True:
            if self.iterations >= max_iter:
                raise RuntimeError(f"simplex exceeded {max_iter} iterations")
            j = self._entering(allowed)
            if j is None:
                return Status.OPTIMAL
            r = self._leaving(j)
            if r is None:
                return Status.UNBOUNDED
            if self.T[r, -1] <= PIVOT_TOL:
                degenerate += 1
                if degenerate >= BLAND_AFTER and not self.bland:
                    logger.debug("stalled after %d degenerate pivots, switching to Bland", degenerate)
                    self.bland = True
                    self.bland_engaged = True
            else:
                degenerate = 0
            self._pivot(r, j)

    def solve(self, max_iter):
        n, na = self.n, self.na
        T = self.T
        total = n + na
        if na:
            # phase 1: minimize the sum of artificials
            phase1 = np.zeros(total)
            phase1[n:] = 1.0
            self._set_costs(phase1)
            self.run(np.ones(total, dtype=bool), max_iter)
            infeas = -T[-1, -1]
            scale = 1.0 + np.abs(T[:-1, -1]).max(initial=0.0)
            if infeas > FEAS_TOL * scale:
                return Status.INFEASIBLE
            # drive zero-level artificials out where a structural pivot exists
            for r in range(self.m):
                if self.basis[r] >= n:
                    row = np.abs(T[r, :n])
                    j = int(np.argmax(row)) if n else 0
                    if n and row[j] > PIVOT_TOL:
                        self._pivot(r, j)
        allowed = np.zeros(total, dtype=bool)
        allowed[:n] = True
        self._set_costs(np.concatenate([self.c, np.zeros(na)]))
        self.bland = False
        return self.run(allowed, max_iter)

    def primal(self):
        x = np.zeros(self.n + self.na)
        x[self.basis] = self.T[:-1, -1]
        return x[:self.n]

    def duals(self):
        # unit columns start as the identity with zero cost, so their reduced costs are -y
        return -self.T[-1, self.unit_cols]


def solve(p: LinearProgram, max_iter: int | None = None) -> LpSolution:
    """Solve ``p`` with the two-phase simplex method.

    Raises
    ------
    ValueError
        On malformed input (dimension mismatch, NaN/Inf coefficients).
    """
    p.validate()
    A, b, c = p.A, p.b, p.objective
    lo, up = p.lower, p.upper
    nvar = p.num_vars

    # variable substitution x = offset + M x'  with x' >= 0
    cols, offset = [], np.zeros(nvar)
    col_of = []  # (var, coefficient) per standard-form column
    extra_rows = []  # upper-bound rows on shifted variables
    for j in range(nvar):
        if np.isfinite(lo[j]):
            offset[j] = lo[j]
            col_of.append((j, 1.0))
            if np.isfinite(up[j]):
                extra_rows.append((len(col_of) - 1, up[j] - lo[j]))
        elif np.isfinite(up[j]):
            offset[j] = up[j]
            col_of.append((j, -1.0))
        else:
            col_of.append((j, 1.0))
            col_of.append((j, -1.0))
    ncol = len(col_of)
    M = np.zeros((nvar, ncol))
    for k, (j, s) in enumerate(col_of):
        M[j, k] = s

    m = A.shape[0]
    senses = list(p.senses) + ["<="] * len(extra_rows)
    rows = np.zeros((m + len(extra_rows), ncol))
    rows[:m] = A @ M
    rhs = np.concatenate([b - A @ offset, [u for _, u in extra_rows]])
    for k, (col, _) in enumerate(extra_rows):
        rows[m + k, col] = 1.0
    mm = rows.shape[0]

    nslack = sum(s != "=" for s in senses)
    if ncol + nslack + mm > MAX_COLUMNS:
        raise ValueError("program too large for the dense tableau")
    std = np.zeros((mm, ncol + nslack))
    std[:, :ncol] = rows
    k = ncol
    slack_col = np.full(mm, -1)
    slack_sign = np.zeros(mm)
    for i, s in enumerate(senses):
        if s != "=":
            slack_sign[i] = 1.0 if s == "<=" else -1.0
            std[i, k] = slack_sign[i]
            slack_col[i] = k
            k += 1
    # make rhs >= 0; on zero-rhs rows prefer the sign that turns the slack into a unit column
    flip = np.where((rhs < 0) | ((rhs == 0) & (slack_sign < 0)), -1.0, 1.0)
    std *= flip[:, None]
    rhs = rhs * flip
    unit = np.where(slack_sign * flip > 0, slack_col, -1)
    cost = np.zeros(ncol + nslack)
    cost[:ncol] = M.T @ c

    tab = _Tableau(std, rhs, cost, unit)
    status = tab.solve(max_iter or 50 * (mm + ncol + nslack) + 10_000)
    sol = LpSolution(status, iterations=tab.iterations, bland_engaged=tab.bland_engaged)
    if status is not Status.OPTIMAL:
        return sol
    xs = tab.primal()
    x = offset + M @ xs[:ncol]
    y_all = tab.duals() * flip
    y = y_all[:m]
    sol.x = x
    sol.objective_value = float(c @ x)
    sol.dual_values = y
    sol.dual_objective = dual_objective(p, y)
    return sol


def _reduced_costs(p: LinearProgram, y):
    return p.objective - p.A.T @ y if p.num_rows else p.objective.copy()


def dual_objective(p: LinearProgram, y) -> float:
    """Dual objective ``b^T y`` plus the bound terms implied by the reduced costs."""
    r = _reduced_costs(p, y)
    pos, neg = np.maximum(r, 0.0), np.maximum(-r, 0.0)
    # infinite-bound terms signal dual infeasibility, reported by verify_certificate
    lo_term = np.where(np.isfinite(p.lower), pos * np.where(np.isfinite(p.lower), p.lower, 0.0), 0.0)
    up_term = np.where(np.isfinite(p.upper), neg * np.where(np.isfinite(p.upper), p.upper, 0.0), 0.0)
    return float(p.b @ y + lo_term.sum() - up_term.sum())


def verify_certificate(p: LinearProgram, x, duals=None, tol: float = CERT_TOL) -> CertificateReport:
    """Check primal feasibility and, when ``duals`` is given, dual feasibility,
    complementary slackness and the duality gap of ``(x, duals)``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (p.num_vars,):
        raise ValueError(f"x has shape {x.shape}, expected ({p.num_vars},)")
    A, b = p.A, p.b
    act = A @ x - b
    violations = []
    worst_primal = 0.0
    for i, (s, v) in enumerate(zip(p.senses, act)):
        bad = {"<=": max(v, 0.0), ">=": max(-v, 0.0), "=": abs(v)}[s]
        worst_primal = max(worst_primal, bad)
        if bad > tol:
            violations.append(f"primal: row {p.row_names[i]} violated by {bad:.3g}")
    for j in range(p.num_vars):
        bad = max(p.lower[j] - x[j], x[j] - p.upper[j], 0.0)
        worst_primal = max(worst_primal, bad)
        if bad > tol:
            violations.append(f"primal: bound on {p.variable_names[j]} violated by {bad:.3g}")
    primal_obj = float(p.objective @ x)

    if duals is None:
        return CertificateReport(worst_primal, 0.0, 0.0, 0.0, primal_obj, float("nan"), tol, violations)

    y = np.asarray(duals, dtype=float)
    if y.shape != (p.num_rows,):
        raise ValueError(f"duals have shape {y.shape}, expected ({p.num_rows},)")
    worst_dual = 0.0
    worst_cs = 0.0
    for i, s in enumerate(p.senses):
        bad = {"<=": max(y[i], 0.0), ">=": max(-y[i], 0.0), "=": 0.0}[s]
        worst_dual = max(worst_dual, bad)
        if bad > tol:
            violations.append(f"dual: multiplier of {p.row_names[i]} has wrong sign ({y[i]:.3g})")
        cs = abs(y[i] * act[i]) if s != "=" else 0.0
        worst_cs = max(worst_cs, cs)
        if cs > tol:
            violations.append(f"complementarity: row {p.row_names[i]} ({cs:.3g})")
    r = _reduced_costs(p, y)
    for j in range(p.num_vars):
        if r[j] > 0:
            bad = r[j] if not np.isfinite(p.lower[j]) else 0.0
            cs = r[j] * (x[j] - p.lower[j]) if np.isfinite(p.lower[j]) else 0.0
        else:
            bad = -r[j] if not np.isfinite(p.upper[j]) else 0.0
            cs = -r[j] * (p.upper[j] - x[j]) if np.isfinite(p.upper[j]) else 0.0
        worst_dual = max(worst_dual, bad)
        worst_cs = max(worst_cs, abs(cs))
        if bad > tol:
            violations.append(f"dual: reduced cost of {p.variable_names[j]} infeasible ({r[j]:.3g})")
        if abs(cs) > tol:
            violations.append(f"complementarity: variable {p.variable_names[j]} ({cs:.3g})")
    dual_obj = dual_objective(p, y)
    gap = abs(primal_obj - dual_obj)
    if gap > tol * (1.0 + abs(primal_obj)):
        violations.append(f"duality gap {gap:.3g}")
    return CertificateReport(worst_primal, worst_dual, worst_cs, gap, primal_obj, dual_obj, tol, violations)
