"""Dense linear programming by a two-phase bounded-variable primal simplex.

Problems are given in the canonical form

    minimize    c . z
    subject to  E z = b,   lower <= z <= upper,

with entries of ``lower``/``upper`` allowed to be -inf/+inf.  Callers
encode inequalities through slack variables.  The solver is deterministic:
identical problems produce identical pivots and identical solutions.

The basis is refactorized densely (LU) at every iteration, which is exact
enough and fast at desk scale; Dantzig pricing is used until the pivot
sequence degenerates, after which Bland's anti-cycling rule is engaged
permanently.  Optimal solutions carry the equality multipliers from the
final basis so that an independent dual certificate can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .exceptions import InvalidMatrix, NumericalBreakdown

_FEASIBILITY_TOL = 1e-9
_OPTIMALITY_TOL = 1e-9
_PIVOT_TOL = 1e-10
_DEGENERATE_STEP = 1e-12
_SINGULAR_GUARD = 1e-13

_AT_LOWER, _AT_UPPER, _FREE, _BASIC = 0, 1, 2, 3


class LpStatus(Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LpProblem:
    """minimize objective . z  subject to  eq_matrix z = eq_rhs, lower <= z <= upper."""

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        c = np.array(self.objective, dtype=float)
        E = np.array(self.eq_matrix, dtype=float)
        b = np.array(self.eq_rhs, dtype=float)
        lo = np.array(self.lower, dtype=float)
        up = np.array(self.upper, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise InvalidMatrix("objective must be a nonempty vector")
        nv = c.size
        if E.ndim != 2 or E.shape[1] != nv:
            raise InvalidMatrix(f"eq_matrix must have {nv} columns, got shape {E.shape}")
        if b.shape != (E.shape[0],):
            raise InvalidMatrix("eq_rhs length must match eq_matrix row count")
        if lo.shape != (nv,) or up.shape != (nv,):
            raise InvalidMatrix("bound vectors must match the variable count")
        if not (np.isfinite(c).all() and np.isfinite(E).all() and np.isfinite(b).all()):
            raise InvalidMatrix("objective, eq_matrix and eq_rhs must be finite")
        if np.isnan(lo).any() or np.isnan(up).any():
            raise InvalidMatrix("bounds may be infinite but not NaN")
        if (lo > up).any():
            raise InvalidMatrix("lower bounds must not exceed upper bounds")
        for name, arr in (("objective", c), ("eq_matrix", E), ("eq_rhs", b),
                          ("lower", lo), ("upper", up)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def num_vars(self) -> int:
        return self.objective.size

    @property
    def num_eqs(self) -> int:
        return self.eq_rhs.size


@dataclass(frozen=True)
class LpSolution:
    """Solve outcome; ``point``/``objective_value``/``dual`` are set iff Optimal.

    ``dual`` holds the equality-constraint multipliers taken from the final
    basis and ``reduced_costs`` the corresponding reduced cost vector.
    """

    status: LpStatus
    point: np.ndarray | None
    objective_value: float | None
    iterations: int
    dual: np.ndarray | None = None
    reduced_costs: np.ndarray | None = None


class _Tableau:
    """Mutable simplex state over the working matrix [E | artificials]."""

    def __init__(self, prob: LpProblem):
        E, b = prob.eq_matrix, prob.eq_rhs
        r, nv = E.shape
        lo, up = prob.lower, prob.upper

        x0 = np.where(np.isfinite(lo), lo, np.where(np.isfinite(up), up, 0.0))
        stat0 = np.where(
            np.isfinite(lo), _AT_LOWER, np.where(np.isfinite(up), _AT_UPPER, _FREE)
        )
        residual = b - E @ x0
        art_sign = np.where(residual >= 0.0, 1.0, -1.0)

        self.W = np.hstack([E, np.diag(art_sign)]) if r else E.copy()
        self.b = b.copy()
        self.lower = np.concatenate([lo, np.zeros(r)])
        self.upper = np.concatenate([up, np.full(r, np.inf)])
        self.x = np.concatenate([x0, np.abs(residual)])
        self.stat = np.concatenate([stat0, np.full(r, _BASIC, dtype=stat0.dtype)])
        self.basis = np.arange(nv, nv + r)
        self.num_struct = nv
        self.num_rows = r
        self.iterations = 0
        self.degenerate_pivots = 0
        self.use_bland = False
        self.max_iterations = 50 * (nv + r)
        self.bland_after = 2 * nv
        self.dual: np.ndarray | None = None
        self.reduced: np.ndarray | None = None

    def _factorize(self):
        B = self.W[:, self.basis]
        lu, piv = scipy.linalg.lu_factor(B, check_finite=False)
        diag = np.abs(np.diag(lu))
        if diag.size and diag.min() <= _SINGULAR_GUARD * max(1.0, diag.max()):
            raise NumericalBreakdown("simplex basis became numerically singular")
        return lu, piv

    def run(self, cost: np.ndarray) -> LpStatus:
        """Pivot until ``cost`` is minimized; returns OPTIMAL or UNBOUNDED."""
        W, b, lo, up, x, stat = self.W, self.b, self.lower, self.upper, self.x, self.stat
        r = self.num_rows
        dual_tol = _OPTIMALITY_TOL * max(1.0, float(np.abs(cost).max()))

        while True:
            self.iterations += 1
            if self.iterations > self.max_iterations:
                raise NumericalBreakdown(
                    f"simplex exceeded {self.max_iterations} iterations"
                )

            if r:
                factor = self._factorize()
                B = W[:, self.basis]
                rhs = b - W @ x + B @ x[self.basis]
                x[self.basis] = scipy.linalg.lu_solve(factor, rhs, check_finite=False)
                y = scipy.linalg.lu_solve(factor, cost[self.basis], trans=1, check_finite=False)
                d = cost - W.T @ y
            else:
                y = np.zeros(0)
                d = cost.copy()

            movable = lo < up
            eligible = (
                ((stat == _AT_LOWER) & movable & (d < -dual_tol))
                | ((stat == _AT_UPPER) & movable & (d > dual_tol))
                | ((stat == _FREE) & (np.abs(d) > dual_tol))
            )
            candidates = np.nonzero(eligible)[0]
            if candidates.size == 0:
                self.dual, self.reduced = y, d
                return LpStatus.OPTIMAL

            if self.use_bland:
                j = int(candidates[0])
            else:
                j = int(candidates[np.argmax(np.abs(d[candidates]))])
            direction = 1.0 if (stat[j] == _AT_LOWER or (stat[j] == _FREE and d[j] < 0)) else -1.0

            if r:
                step_col = scipy.linalg.lu_solve(factor, W[:, j], check_finite=False)
                delta = direction * step_col
                limits = np.full(r, np.inf)
                pos = delta > _PIVOT_TOL
                neg = delta < -_PIVOT_TOL
                bi = self.basis
                limits[pos] = (x[bi[pos]] - lo[bi[pos]]) / delta[pos]
                limits[neg] = (x[bi[neg]] - up[bi[neg]]) / delta[neg]
                limits = np.maximum(limits, 0.0)
                min_basic = float(limits.min()) if r else np.inf
            else:
                delta = np.zeros(0)
                limits = delta
                min_basic = np.inf

            own_range = up[j] - lo[j]
            step = min(min_basic, own_range)
            if not np.isfinite(step):
                return LpStatus.UNBOUNDED

            if step > 0.0:
                x[j] += direction * step
                if r:
                    x[self.basis] -= step * delta

            if min_basic <= own_range:
                ties = np.nonzero(limits <= min_basic + _DEGENERATE_STEP)[0]
                if self.use_bland:
                    leave_pos = int(ties[np.argmin(self.basis[ties])])
                else:
                    leave_pos = int(ties[np.argmax(np.abs(delta[ties]))])
                leaving = int(self.basis[leave_pos])
                if delta[leave_pos] > 0:
                    x[leaving] = lo[leaving]
                    stat[leaving] = _AT_LOWER
                else:
                    x[leaving] = up[leaving]
                    stat[leaving] = _AT_UPPER
                self.basis[leave_pos] = j
                stat[j] = _BASIC
            else:
                # bound flip: the entering variable crosses to its other bound
                x[j] = up[j] if direction > 0 else lo[j]
                stat[j] = _AT_UPPER if direction > 0 else _AT_LOWER

            if step <= _DEGENERATE_STEP:
                self.degenerate_pivots += 1
                if self.degenerate_pivots > self.bland_after:
                    self.use_bland = True

    def drive_out_artificials(self):
        """Swap structural columns for basic artificials where possible.

        Artificials that cannot be pivoted out sit on redundant rows; they
        stay basic but are pinned to [0, 0] so they can never move again.
        """
        nv = self.num_struct
        for pos in range(self.num_rows):
            if self.basis[pos] < nv:
                continue
            factor = self._factorize()
            unit = np.zeros(self.num_rows)
            unit[pos] = 1.0
            rho = scipy.linalg.lu_solve(factor, unit, trans=1, check_finite=False)
            row = self.W[:, :nv].T @ rho
            row[self.stat[:nv] == _BASIC] = 0.0
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) > 1e-8:
                art = int(self.basis[pos])
                self.basis[pos] = j
                self.stat[j] = _BASIC
                self.stat[art] = _AT_LOWER
                self.x[art] = 0.0


def solve(prob: LpProblem) -> LpSolution:
    """Solve the LP; statuses are Optimal, Infeasible or Unbounded.

    Raises :class:`NumericalBreakdown` if pivoting degenerates beyond the
    iteration cap of 50 * (variables + equalities).
    """
    tab = _Tableau(prob)
    nv, r = tab.num_struct, tab.num_rows

    phase1_cost = np.concatenate([np.zeros(nv), np.ones(r)])
    if tab.run(phase1_cost) is LpStatus.UNBOUNDED:
        raise NumericalBreakdown("phase-1 objective reported unbounded")
    infeasibility = float(tab.x[nv:].sum()) if r else 0.0
    rhs_scale = max(1.0, float(np.abs(prob.eq_rhs).max())) if r else 1.0
    if infeasibility > _FEASIBILITY_TOL * rhs_scale:
        return LpSolution(LpStatus.INFEASIBLE, None, None, tab.iterations)

    if r:
        tab.x[nv:] = 0.0
        tab.lower[nv:] = 0.0
        tab.upper[nv:] = 0.0
        tab.drive_out_artificials()

    phase2_cost = np.concatenate([prob.objective, np.zeros(r)])
    if tab.run(phase2_cost) is LpStatus.UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, None, None, tab.iterations)

    point = tab.x[:nv].copy()
    objective_value = float(prob.objective @ point)
    reduced = tab.reduced[:nv].copy() if tab.reduced is not None else None
    return LpSolution(
        LpStatus.OPTIMAL,
        point,
        objective_value,
        tab.iterations,
        dual=tab.dual.copy() if tab.dual is not None else None,
        reduced_costs=reduced,
    )


def check_solution(prob: LpProblem, sol: LpSolution, tol: float) -> bool:
    """Independent feasibility/objective verifier using only matrix arithmetic.

    True iff the point satisfies the equalities within ``tol`` (scaled by
    max(1, |b|_inf)), the bounds within ``tol``, and the stored objective
    value within ``tol * max(1, |value|)``.
    """
    if sol.status is not LpStatus.OPTIMAL:
        raise ValueError("check_solution requires an Optimal solution")
    x = sol.point
    if x is None or x.shape != (prob.num_vars,):
        return False
    if prob.num_eqs:
        eq_err = float(np.abs(prob.eq_matrix @ x - prob.eq_rhs).max())
        if eq_err > tol * max(1.0, float(np.abs(prob.eq_rhs).max())):
            return False
    if (x < prob.lower - tol).any() or (x > prob.upper + tol).any():
        return False
    value = float(prob.objective @ x)
    return abs(value - sol.objective_value) <= tol * max(1.0, abs(sol.objective_value))


def verify_dual_certificate(prob: LpProblem, sol: LpSolution, tol: float = 1e-7) -> bool:
    """Check the dual certificate carried by an Optimal solution.

    Feasibility: reduced costs d = c - E^T y must be >= -tol wherever the
    lower bound is the only finite bound direction consistent with them,
    i.e. d may only be meaningfully positive when lower[j] is finite and
    meaningfully negative when upper[j] is finite.  Strong duality: the
    bounded-dual objective y.b + sum_j d_j * (active bound) must match the
    primal objective within ``tol * max(1, |objective|)``.
    """
    if sol.status is not LpStatus.OPTIMAL or sol.dual is None:
        raise ValueError("verify_dual_certificate requires an Optimal solution with a dual")
    y = sol.dual
    d = prob.objective - (prob.eq_matrix.T @ y if prob.num_eqs else 0.0)
    scale = max(1.0, float(np.abs(prob.objective).max()))
    cutoff = tol * scale
    if ((d > cutoff) & ~np.isfinite(prob.lower)).any():
        return False
    if ((d < -cutoff) & ~np.isfinite(prob.upper)).any():
        return False
    d = d.copy()
    d[np.abs(d) <= cutoff] = 0.0
    contribution = np.zeros_like(d)
    pos, neg = d > 0, d < 0
    contribution[pos] = d[pos] * prob.lower[pos]
    contribution[neg] = d[neg] * prob.upper[neg]
    dual_value = float((y @ prob.eq_rhs if prob.num_eqs else 0.0) + contribution.sum())
    return abs(dual_value - sol.objective_value) <= tol * max(1.0, abs(sol.objective_value))
