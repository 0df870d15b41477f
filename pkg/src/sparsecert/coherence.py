"""Mutual coherence of a dictionary and the sparsity bound it implies.

A dictionary is a matrix whose columns are unit vectors; its coherence is
the largest absolute inner product between distinct columns.  Coherence
certifies recovery of any k-sparse signal for k < (1 + 1/M) / 2, and the
width-based bound always dominates it: 1 + 1/M <= gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import (
    NonpositiveCoherence,
    NotADictionary,
    NotUnderdetermined,
    OrderingViolation,
    ZeroColumn,
)
from .linalg import DEFAULT_RANK_TOL, as_matrix, null_space_basis
from .width import gamma_width

DEFAULT_DICTIONARY_TOL = 1e-8

_K2_STRICTNESS = 1e-9


@dataclass(frozen=True)
class CoherenceReport:
    """Coherence M with the attaining column pair (1-based, i < j) and k2."""

    M: float
    argmax_pair: tuple[int, int]
    k2: int
    is_dictionary: bool


class BoundsComparison(NamedTuple):
    gamma: float
    M: float
    k1: int
    k2: int
    theorem3_holds: bool


def is_dictionary(A, tol: float = DEFAULT_DICTIONARY_TOL) -> bool:
    """True iff every column has Euclidean norm within ``tol`` of 1."""
    A = as_matrix(A)
    norms = np.linalg.norm(A, axis=0)
    return bool(np.abs(norms - 1.0).max() <= tol)


def normalize_columns(A) -> np.ndarray:
    """Scale each column to unit Euclidean norm; zero columns are refused."""
    A = as_matrix(A)
    norms = np.linalg.norm(A, axis=0)
    zero = np.nonzero(norms == 0.0)[0]
    if zero.size:
        raise ZeroColumn(int(zero[0]) + 1)
    return A / norms


def coherence(A, tol: float = DEFAULT_DICTIONARY_TOL) -> CoherenceReport:
    """Coherence report for an underdetermined dictionary.

    Requires unit columns within ``tol`` (else :class:`NotADictionary`) and
    m < n (else :class:`NotUnderdetermined`).  More unit vectors than
    dimensions cannot be pairwise orthogonal, so M > 0 is guaranteed and
    the k2 bound is always well-posed here.
    """
    A = as_matrix(A)
    m, n = A.shape
    if not is_dictionary(A, tol):
        raise NotADictionary(f"columns are not unit vectors within {tol}")
    if m >= n:
        raise NotUnderdetermined(f"coherence analysis needs m < n, got {m}x{n}")
    gram = np.abs(A.T @ A)
    np.fill_diagonal(gram, -1.0)
    flat = int(np.argmax(gram))
    i, j = divmod(flat, n)
    if i > j:
        i, j = j, i
    M = float(gram[i, j])
    return CoherenceReport(
        M=M, argmax_pair=(i + 1, j + 1), k2=sparsity_bound_k2(M), is_dictionary=True
    )


def sparsity_bound_k2(M: float) -> int:
    """Largest integer k with k < (1 + 1/M) / 2, never negative."""
    if M <= 0.0:
        raise NonpositiveCoherence(f"coherence must be positive, got {M}")
    bound = 0.5 * (1.0 + 1.0 / M)
    return max(0, math.ceil(bound - _K2_STRICTNESS) - 1)


def compare_bounds(
    A,
    *,
    dict_tol: float = DEFAULT_DICTIONARY_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
    threads: int = 1,
) -> BoundsComparison:
    """Both sparsity bounds end to end for a full-rank dictionary.

    ``theorem3_holds`` records whether 1 + 1/M <= gamma within 1e-8.  The
    implied ordering k1 >= k2 is asserted; a violation would be an internal
    bug and raises :class:`OrderingViolation`.
    """
    A = as_matrix(A)
    report = coherence(A, dict_tol)
    basis = null_space_basis(A, rank_tol)
    w = gamma_width(basis, threads=threads)
    holds = 1.0 + 1.0 / report.M <= w.gamma + 1e-8
    if w.k1 < report.k2:
        raise OrderingViolation(
            f"width bound k1={w.k1} fell below coherence bound k2={report.k2}"
        )
    return BoundsComparison(
        gamma=w.gamma, M=report.M, k1=w.k1, k2=report.k2, theorem3_holds=holds
    )


__all__ = [
    "BoundsComparison",
    "CoherenceReport",
    "coherence",
    "compare_bounds",
    "is_dictionary",
    "normalize_columns",
    "sparsity_bound_k2",
]
