"""Exact recoverability certification.

The null space V of A is strictly k-balanced when every support S of size
k satisfies |v_S|_1 < |v_Z|_1 for all nonzero v in V, equivalently

    mu(S) = max { |v_S|_1 : v in V, |v|_1 <= 1 } < 1/2.

That condition holds iff every k-sparse signal is the unique minimizer of
both the l0 and the l1 decoding problems, so the largest certified k
(``k_star``) is the exact recoverability threshold.  This module computes
mu by LP, scans supports exhaustively, decodes with an l1-minimizing LP,
brute-forces the l0 problem for cross-validation, and turns failed
certificates into concrete recovery counterexamples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import lp
from .exceptions import NotInRange, NumericalBreakdown, TooLarge, WitnessUnavailable
from .linalg import NullSpaceBasis, as_matrix, as_vector, complement_matrix
from .parallel import map_ordered
from .rng import SplitMix64
from .width import _max_over_l1_ball

MU_STRICTNESS = 1e-9
RECOVERY_TOL = 1e-6

_SUPPORT_SIZE_GUARD = 20
_SUPPORT_COUNT_GUARD = 10**5
_ORACLE_GUARD = 10**6
_EXHAUSTIVE_GUARD = 10**4


@dataclass(frozen=True)
class Partition:
    """A support S inside {1..n} together with its implicit complement Z."""

    n: int
    support: tuple[int, ...]

    def __post_init__(self):
        s = tuple(sorted(set(self.support)))
        if len(s) != len(self.support):
            raise ValueError("support indices must be distinct")
        if s and (s[0] < 1 or s[-1] > self.n):
            raise ValueError(f"support indices must lie in 1..{self.n}")
        object.__setattr__(self, "support", s)

    @property
    def complement(self) -> tuple[int, ...]:
        inside = set(self.support)
        return tuple(i for i in range(1, self.n + 1) if i not in inside)

    @property
    def size(self) -> int:
        return len(self.support)

    def indicator(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        for i in self.support:
            mask[i - 1] = True
        return mask


@dataclass(frozen=True)
class BalancednessReport:
    """Outcome of the exhaustive strict-balancedness scan.

    ``worst_partition``/``worst_mu`` hold the failing witness at size
    k_star + 1 when one was reached, otherwise the worst support at the
    last certified size.  ``strict_margin`` is 1/2 minus the largest mu at
    size k_star (0.5 when k_star = 0, where the condition is vacuous).
    """

    k_star: int
    worst_partition: Partition | None
    worst_mu: float
    mu_by_support: dict[tuple[int, ...], float] = field(repr=False)
    strict_margin: float


@dataclass(frozen=True)
class RecoveryResult:
    """One planted-versus-decoded comparison.

    ``success`` is componentwise agreement within
    ``RECOVERY_TOL * max(1, |planted|_inf)``.
    """

    planted: np.ndarray
    decoded: np.ndarray
    success: bool
    l1_planted: float
    l1_decoded: float


def _make_recovery_result(planted: np.ndarray, decoded: np.ndarray) -> RecoveryResult:
    scale = max(1.0, float(np.abs(planted).max()))
    success = bool(np.abs(decoded - planted).max() <= RECOVERY_TOL * scale)
    return RecoveryResult(
        planted=planted,
        decoded=decoded,
        success=success,
        l1_planted=float(np.abs(planted).sum()),
        l1_decoded=float(np.abs(decoded).sum()),
    )


def basis_pursuit(A, y) -> np.ndarray:
    """The l1-minimizing solution of A x = y, via one LP.

    Variables (x, t) with t the epigraph of |x|: minimize sum(t) subject
    to A x = y and -t <= x <= t.  Raises :class:`NotInRange` when y is not
    in the range of A.
    """
    A = as_matrix(A)
    y = as_vector(y)
    m, n = A.shape
    if y.size != m:
        raise NotInRange(f"measurement length {y.size} does not match {m} rows")

    nv = 4 * n
    E = np.zeros((m + 2 * n, nv))
    eye = np.eye(n)
    E[:m, :n] = A
    E[m : m + n, :n] = eye
    E[m : m + n, n : 2 * n] = -eye
    E[m : m + n, 2 * n : 3 * n] = eye
    E[m + n :, :n] = eye
    E[m + n :, n : 2 * n] = eye
    E[m + n :, 3 * n :] = -eye
    rhs = np.concatenate([y, np.zeros(2 * n)])

    objective = np.zeros(nv)
    objective[n : 2 * n] = 1.0
    lower = np.concatenate([np.full(n, -np.inf), np.zeros(3 * n)])
    upper = np.full(nv, np.inf)

    sol = lp.solve(lp.LpProblem(objective, E, rhs, lower, upper))
    if sol.status is lp.LpStatus.INFEASIBLE:
        raise NotInRange("measurements are not in the range of the matrix")
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise NumericalBreakdown(f"decoding LP returned {sol.status.value}")
    return sol.point[:n].copy()


def l0_oracle(A, y, k_max: int) -> list[tuple[Partition, np.ndarray]]:
    """All sparsest solutions of A x = y with at most ``k_max`` nonzeros.

    Supports are enumerated in increasing size and lexicographic order;
    each candidate is the least-squares solution on its support, kept when
    the residual is at most 1e-8 * max(1, |y|_2).  The first size with any
    solution wins, and a single-entry list certifies a unique l0 solution.
    """
    A = as_matrix(A)
    y = as_vector(y)
    m, n = A.shape
    if y.size != m:
        raise NotInRange(f"measurement length {y.size} does not match {m} rows")
    if k_max > m:
        raise ValueError(f"k_max={k_max} exceeds the number of measurements {m}")
    if math.comb(n, k_max) > _ORACLE_GUARD:
        raise TooLarge(f"C({n},{k_max}) supports exceed the enumeration guard")

    residual_tol = 1e-8 * max(1.0, float(np.linalg.norm(y)))
    for k in range(k_max + 1):
        found: list[tuple[Partition, np.ndarray]] = []
        for combo in itertools.combinations(range(n), k):
            x = np.zeros(n)
            if k:
                cols = A[:, list(combo)]
                coeffs = np.linalg.lstsq(cols, y, rcond=None)[0]
                x[list(combo)] = coeffs
            if np.linalg.norm(A @ x - y) <= residual_tol:
                found.append((Partition(n, tuple(i + 1 for i in combo)), x))
        if found:
            return found
    return []


def _mu_with_witness(
    basis: NullSpaceBasis, support: tuple[int, ...]
) -> tuple[float, np.ndarray]:
    """mu(S) and an attaining null-space vector.

    |v_S|_1 = max over sign vectors of sum(sigma_i v_i), so mu is the max
    of 2^(|S|-1) LPs; the global v -> -v symmetry pins the first sign.
    """
    if not support:
        raise ValueError("support must be nonempty")
    if len(support) > _SUPPORT_SIZE_GUARD:
        raise TooLarge(f"support of size {len(support)} exceeds the sign-pattern guard")
    idx = [i - 1 for i in support]
    best_mu = -math.inf
    best_v = None
    for tail in itertools.product((1.0, -1.0), repeat=len(idx) - 1):
        signs = (1.0,) + tail
        weights = np.zeros(basis.n)
        for pos, sigma in zip(idx, signs):
            weights[pos] = sigma
        value, v = _max_over_l1_ball(basis.matrix, weights)
        if value > best_mu:
            best_mu, best_v = value, v
    return best_mu, best_v


def support_balance_mu(basis: NullSpaceBasis, S: Partition) -> float:
    """mu(S): the largest l1 mass a unit-l1 null-space vector puts on S."""
    return _mu_with_witness(basis, S.support)[0]


def _scan_level(basis: NullSpaceBasis, k: int, threads: int):
    """mu over every size-k support, plus the worst one (ties keep the first)."""
    n = basis.n
    supports = [
        tuple(i + 1 for i in combo) for combo in itertools.combinations(range(n), k)
    ]
    mus = map_ordered(lambda s: _mu_with_witness(basis, s)[0], supports, threads)
    worst_pos = int(np.argmax(mus))
    by_support = dict(zip(supports, mus))
    return by_support, supports[worst_pos], mus[worst_pos]


def strict_k_balanced(
    basis: NullSpaceBasis, k: int, *, threads: int = 1
) -> tuple[bool, Partition, float]:
    """Whether every size-k support has mu < 1/2 - 1e-9, with the worst one.

    The strictness guard keeps the certificate from flipping on LP jitter;
    borderline supports are reported as not certified.
    """
    n = basis.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}, got {k}")
    if math.comb(n, k) > _SUPPORT_COUNT_GUARD:
        raise TooLarge(f"C({n},{k}) supports exceed the enumeration guard")
    _, worst_support, worst_mu = _scan_level(basis, k, threads)
    holds = worst_mu < 0.5 - MU_STRICTNESS
    return holds, Partition(n, worst_support), worst_mu


def max_certified_k(
    basis: NullSpaceBasis, k_cap: int, *, threads: int = 1
) -> BalancednessReport:
    """Largest k <= k_cap with strict k-balancedness certified.

    Balancedness is monotone (any smaller support extends to a larger
    one), so levels are scanned upward and the first failure stops the
    search with its witness.
    """
    n = basis.n
    if not 0 <= k_cap <= n - 1:
        raise ValueError(f"k_cap must lie in 0..{n - 1}, got {k_cap}")
    for k in range(1, k_cap + 1):
        if math.comb(n, k) > _SUPPORT_COUNT_GUARD:
            raise TooLarge(f"C({n},{k}) supports exceed the enumeration guard")

    mu_by_support: dict[tuple[int, ...], float] = {}
    k_star = 0
    certified_worst_mu = 0.0
    witness: tuple[Partition, float] | None = None
    for k in range(1, k_cap + 1):
        by_support, worst_support, worst_mu = _scan_level(basis, k, threads)
        mu_by_support.update(by_support)
        if worst_mu < 0.5 - MU_STRICTNESS:
            k_star = k
            certified_worst_mu = worst_mu
            witness = (Partition(n, worst_support), worst_mu)
        else:
            witness = (Partition(n, worst_support), worst_mu)
            break

    strict_margin = 0.5 - certified_worst_mu if k_star else 0.5
    worst_partition, worst_mu = witness if witness else (None, 0.0)
    return BalancednessReport(
        k_star=k_star,
        worst_partition=worst_partition,
        worst_mu=worst_mu,
        mu_by_support=mu_by_support,
        strict_margin=strict_margin,
    )


def counterexample_from_witness(
    basis: NullSpaceBasis, worst: Partition, worst_mu: float
) -> RecoveryResult:
    """A concrete recovery failure at a support where strictness fails.

    The witness v splits as v_S + v_Z with |v_S|_1 >= |v_Z|_1; planting
    x = v_S makes x - v an equally-good-or-better feasible point, so l1
    decoding cannot return x uniquely.  Decoding runs against the
    canonical complement matrix of the basis, which defines the same l1
    problem as any matrix with this null space.  If the decoder happens to
    return the planted point on an exact tie, the constructed alternative
    is substituted so the result always exhibits the non-uniqueness.
    """
    if worst_mu < 0.5 - MU_STRICTNESS:
        raise WitnessUnavailable(f"mu={worst_mu} certifies balance; no failure exists")
    mu, v = _mu_with_witness(basis, worst.support)
    if mu < 0.5 - MU_STRICTNESS:
        raise WitnessUnavailable(f"support {worst.support} has mu={mu} < 1/2")

    mask = worst.indicator()
    planted = np.where(mask, v, 0.0)
    A = complement_matrix(basis)
    decoded = basis_pursuit(A, A @ planted)

    scale = max(1.0, float(np.abs(planted).max()))
    if np.abs(decoded - planted).max() <= RECOVERY_TOL * scale:
        decoded = planted - v
    result = _make_recovery_result(planted, decoded)
    if result.l1_decoded > result.l1_planted + 1e-8 or result.success:
        raise NumericalBreakdown("witness failed to produce a recovery failure")
    return result


def _planted_vector(n: int, support0: tuple[int, ...], signs, stream: SplitMix64) -> np.ndarray:
    x = np.zeros(n)
    for pos, sigma in zip(support0, signs):
        x[pos] = sigma * stream.uniform_in(0.5, 1.5)
    return x


def recovery_experiment(
    A,
    k: int,
    mode: str,
    trials: int,
    seed: int,
    *,
    threads: int = 1,
) -> float:
    """Fraction of k-sparse signals recovered exactly by l1 decoding.

    ``exhaustive`` mode plants every support (lexicographic) times every
    sign pattern times ``trials`` magnitude draws; ``random`` mode samples
    ``trials`` signals outright.  Magnitudes are uniform in [0.5, 1.5]
    from the documented seeded stream, so the planted support is always
    unambiguous.
    """
    A = as_matrix(A)
    m, n = A.shape
    if not 0 <= k <= n:
        raise ValueError(f"sparsity k must lie in 0..{n}, got {k}")
    if mode not in ("exhaustive", "random"):
        raise ValueError(f"mode must be 'exhaustive' or 'random', got {mode!r}")
    if trials < 1:
        raise ValueError("trials must be positive")

    stream = SplitMix64(seed)
    planted: list[np.ndarray] = []
    if mode == "exhaustive":
        if math.comb(n, k) > _EXHAUSTIVE_GUARD:
            raise TooLarge(f"C({n},{k}) supports exceed the exhaustive guard")
        for combo in itertools.combinations(range(n), k):
            for signs in itertools.product((1.0, -1.0), repeat=k):
                for _ in range(trials):
                    planted.append(_planted_vector(n, combo, signs, stream))
    else:
        for _ in range(trials):
            combo = tuple(stream.sample_without_replacement(n, k))
            signs = tuple(stream.pick_sign() for _ in range(k))
            planted.append(_planted_vector(n, combo, signs, stream))

    def decode(x: np.ndarray) -> bool:
        return _make_recovery_result(x, basis_pursuit(A, A @ x)).success

    outcomes = map_ordered(decode, planted, threads)
    return sum(outcomes) / len(outcomes)
