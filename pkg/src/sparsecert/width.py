"""The l1/linf width of a null space via face linear programs.

For an orthonormal basis N of null(A) (shape n x p), the width is

    gamma = min { |v|_1 : v = N x, |v|_inf = 1 }.

The feasible set splits into 2n faces where one coordinate of v pins to
+1 or -1; the v -> -v symmetry makes the two signs equal, so only the n
positive faces are solved.  Each face is one LP in variables (x, t) with
t the componentwise epigraph of |v|.  A reciprocal formulation (maximize
v_i over the l1 ball of the null space) provides an independent
cross-check of the same number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import lp
from .exceptions import AllFacesInfeasible, FaceInfeasible, NumericalBreakdown
from .linalg import NullSpaceBasis
from .parallel import map_ordered

_REPORT_SLACK = 1e-8
_K1_STRICTNESS = 1e-9


@dataclass(frozen=True)
class FaceProblem:
    """One face of the unit-linf cross-section: coordinate ``face_index`` pinned to 1.

    Face indices are 1-based, matching report output.
    """

    face_index: int
    basis: NullSpaceBasis

    def __post_init__(self):
        if not 1 <= self.face_index <= self.basis.n:
            raise ValueError(
                f"face index {self.face_index} out of range 1..{self.basis.n}"
            )

    def to_lp(self, rhs_sign: float = 1.0) -> lp.LpProblem:
        """Encode min |N x|_1 over the face as an equality-form LP.

        Variables are [x (p, free) | t (n) | s+ (n) | s- (n)] with rows
        [Nx]_i = rhs_sign, [Nx]_j - t_j + s+_j = 0 and
        [Nx]_j + t_j - s-_j = 0; t_j <= 1 for j != i caps the other
        coordinates.
        """
        N = self.basis.matrix
        n, p = self.basis.n, self.basis.p
        i0 = self.face_index - 1
        nv = p + 3 * n

        E = np.zeros((2 * n + 1, nv))
        rhs = np.zeros(2 * n + 1)
        eye = np.eye(n)
        E[0, :p] = N[i0]
        rhs[0] = rhs_sign
        E[1 : n + 1, :p] = N
        E[1 : n + 1, p : p + n] = -eye
        E[1 : n + 1, p + n : p + 2 * n] = eye
        E[n + 1 :, :p] = N
        E[n + 1 :, p : p + n] = eye
        E[n + 1 :, p + 2 * n :] = -eye

        objective = np.zeros(nv)
        objective[p : p + n] = 1.0
        lower = np.concatenate([np.full(p, -np.inf), np.zeros(3 * n)])
        upper = np.full(nv, np.inf)
        upper[p : p + n] = 1.0
        upper[p + i0] = np.inf
        return lp.LpProblem(objective, E, rhs, lower, upper)


@dataclass(frozen=True)
class WidthReport:
    """gamma with its witness: the face attaining it, the minimizing x,
    the null-space vector v = N x, all per-face values (inf marks an empty
    face), and the derived sparsity bound k1."""

    gamma: float
    best_face: int
    minimizer_x: np.ndarray
    witness_v: np.ndarray
    per_face_values: np.ndarray
    k1: int


def _l1_ball_lp(N: np.ndarray, weights: np.ndarray) -> lp.LpProblem:
    """maximize weights . (N x) over { x : |N x|_1 <= 1 }, as a minimization.

    Variables [x (p) | t (n) | s+ (n) | s- (n) | s0] with the epigraph rows
    of the face encoding plus the budget row sum(t) + s0 = 1.
    """
    n, p = N.shape
    nv = p + 3 * n + 1
    E = np.zeros((2 * n + 1, nv))
    rhs = np.zeros(2 * n + 1)
    eye = np.eye(n)
    E[:n, :p] = N
    E[:n, p : p + n] = -eye
    E[:n, p + n : p + 2 * n] = eye
    E[n : 2 * n, :p] = N
    E[n : 2 * n, p : p + n] = eye
    E[n : 2 * n, p + 2 * n : p + 3 * n] = -eye
    E[2 * n, p : p + n] = 1.0
    E[2 * n, -1] = 1.0
    rhs[2 * n] = 1.0

    objective = np.zeros(nv)
    objective[:p] = -(N.T @ weights)
    lower = np.concatenate([np.full(p, -np.inf), np.zeros(3 * n + 1)])
    upper = np.full(nv, np.inf)
    return lp.LpProblem(objective, E, rhs, lower, upper)


def _max_over_l1_ball(N: np.ndarray, weights: np.ndarray) -> tuple[float, np.ndarray]:
    """(max value, attaining v) of weights . v over the null-space l1 ball."""
    prob = _l1_ball_lp(N, weights)
    sol = lp.solve(prob)
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise NumericalBreakdown(f"l1-ball LP returned {sol.status.value}")
    p = N.shape[1]
    return -sol.objective_value, N @ sol.point[:p]


def face_min(
    basis: NullSpaceBasis, i: int, *, rhs_sign: float = 1.0
) -> tuple[float, np.ndarray]:
    """Minimum of |N x|_1 over face i (1-based) and a minimizing x.

    Raises :class:`FaceInfeasible` when the face is empty, which happens
    exactly when row i of the basis is zero.
    """
    prob = FaceProblem(i, basis).to_lp(rhs_sign)
    sol = lp.solve(prob)
    if sol.status is lp.LpStatus.INFEASIBLE:
        raise FaceInfeasible(i)
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise NumericalBreakdown(f"face LP returned {sol.status.value}")
    return sol.objective_value, sol.point[: basis.p].copy()


def gamma_width(basis: NullSpaceBasis, *, threads: int = 1) -> WidthReport:
    """gamma as the minimum over the n positive faces, with witness.

    Empty faces are skipped and recorded as +inf in ``per_face_values``;
    at least one face is always feasible for a valid basis.
    """
    n = basis.n

    def solve_face(i: int):
        try:
            return face_min(basis, i)
        except FaceInfeasible:
            return None

    outcomes = map_ordered(solve_face, range(1, n + 1), threads)
    per_face = np.array([math.inf if o is None else o[0] for o in outcomes])
    if not np.isfinite(per_face).any():
        raise AllFacesInfeasible("no feasible face; the basis is invalid")

    best = int(np.argmin(per_face))
    gamma = float(per_face[best])
    x = outcomes[best][1]
    v = basis.matrix @ x
    _validate_width(gamma, best, v, basis.n)
    return WidthReport(
        gamma=gamma,
        best_face=best + 1,
        minimizer_x=x,
        witness_v=v,
        per_face_values=per_face,
        k1=sparsity_bound_k1(gamma),
    )


def _validate_width(gamma: float, best0: int, v: np.ndarray, n: int):
    if not (1.0 - 1e-6 <= gamma <= n + 1e-6):
        raise NumericalBreakdown(f"width {gamma} outside [1, {n}]")
    if abs(v[best0] - 1.0) > _REPORT_SLACK or np.abs(v).max() > 1.0 + _REPORT_SLACK:
        raise NumericalBreakdown("width witness violates face constraints")
    if abs(float(np.abs(v).sum()) - gamma) > 1e-7:
        raise NumericalBreakdown("width witness norm does not match gamma")


def gamma_reciprocal(basis: NullSpaceBasis, *, threads: int = 1) -> float:
    """gamma via the reciprocal problem: 1 / max_i max { v_i : |v|_1 <= 1 }.

    The sign symmetry of the null space makes the negative objectives
    redundant, so n LPs suffice.
    """
    N = basis.matrix

    def solve_coordinate(i: int) -> float:
        weights = np.zeros(basis.n)
        weights[i] = 1.0
        return _max_over_l1_ball(N, weights)[0]

    values = map_ordered(solve_coordinate, range(basis.n), threads)
    peak = max(values)
    if peak <= 0.0:
        raise AllFacesInfeasible("null-space l1 ball collapsed; the basis is invalid")
    return 1.0 / peak


def sparsity_bound_k1(gamma: float) -> int:
    """Largest integer k with k < gamma / 2, never negative.

    Strictness is enforced with a 1e-9 guard so half-integer widths do not
    flip the bound on solver jitter.
    """
    if gamma < 1.0 - 1e-9:
        raise ValueError(f"width must be at least 1, got {gamma}")
    return max(0, math.ceil(gamma / 2.0 - _K1_STRICTNESS) - 1)
