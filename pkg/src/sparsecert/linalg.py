"""Dense matrix plumbing: validation, QR, rank, and null-space bases.

Matrices are plain float64 numpy arrays; vectors are one-dimensional
arrays (a single-column matrix is accepted and flattened wherever a
vector is expected).  Everything here is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import InvalidMatrix, NotUnderdetermined, NumericalBreakdown, RankDeficient

DEFAULT_RANK_TOL = 1e-10

_ORTHONORMALITY_TOL = 1e-10


def as_matrix(values) -> np.ndarray:
    """Coerce to a validated two-dimensional float64 array.

    Raises :class:`InvalidMatrix` for empty input, wrong dimensionality,
    or non-finite entries.
    """
    M = np.array(values, dtype=float, order="C")
    if M.ndim != 2:
        raise InvalidMatrix(f"expected a 2-D matrix, got {M.ndim}-D data")
    if M.shape[0] == 0 or M.shape[1] == 0:
        raise InvalidMatrix(f"matrix dimensions must be positive, got {M.shape}")
    if not np.isfinite(M).all():
        raise InvalidMatrix("matrix entries must be finite")
    return M


def as_vector(values) -> np.ndarray:
    """Coerce to a validated 1-D float64 array; accepts single-column matrices."""
    v = np.array(values, dtype=float)
    if v.ndim == 2 and v.shape[1] == 1:
        v = v.ravel()
    if v.ndim != 1:
        raise InvalidMatrix(f"expected a vector (1-D or single column), got shape {v.shape}")
    if v.size == 0:
        raise InvalidMatrix("vector must have at least one entry")
    if not np.isfinite(v).all():
        raise InvalidMatrix("vector entries must be finite")
    return v


@dataclass(frozen=True)
class NullSpaceBasis:
    """An orthonormal basis of null(A) stored column-wise.

    ``matrix`` has shape (n, p) with orthonormal columns spanning the null
    space of the matrix it was built from; ``source_tol`` is the tolerance
    the construction was verified against.
    """

    n: int
    p: int
    matrix: np.ndarray
    source_tol: float

    def __post_init__(self):
        if self.matrix.shape != (self.n, self.p):
            raise InvalidMatrix(
                f"basis shape {self.matrix.shape} does not match ({self.n}, {self.p})"
            )
        self.matrix.setflags(write=False)


def qr_decompose(M) -> tuple[np.ndarray, np.ndarray]:
    """Householder QR: returns square orthogonal Q and upper-trapezoidal R with QR = M."""
    M = as_matrix(M)
    Q, R = np.linalg.qr(M, mode="complete")
    return Q, R


def rank(M, tol: float = DEFAULT_RANK_TOL) -> int:
    """Numerical rank by column-pivoted QR.

    Counts diagonal entries of R exceeding ``tol * max(1, |R[0,0]|)``;
    pivoting puts the largest diagonal entry first.
    """
    M = as_matrix(M)
    if tol <= 0:
        raise ValueError("rank tolerance must be positive")
    R = scipy.linalg.qr(M, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(R))
    if diag.size == 0:
        return 0
    threshold = tol * max(1.0, diag[0])
    return int(np.count_nonzero(diag > threshold))


def null_space_basis(A, tol: float = DEFAULT_RANK_TOL) -> NullSpaceBasis:
    """Orthonormal basis of null(A) for a full-rank underdetermined A.

    Built from the Householder QR of A-transpose: the trailing n - m columns
    of the full Q span the null space.  Raises :class:`NotUnderdetermined`
    when m >= n and :class:`RankDeficient` when rank(A) < m.
    """
    A = as_matrix(A)
    m, n = A.shape
    if m >= n:
        raise NotUnderdetermined(f"need m < n, got {m}x{n}")
    if rank(A, tol) < m:
        raise RankDeficient(f"matrix of shape {m}x{n} has rank below {m}")
    Q, _ = np.linalg.qr(A.T, mode="complete")
    N = np.ascontiguousarray(Q[:, m:])
    scale = max(1.0, float(np.abs(A).max()))
    if np.abs(A @ N).max() > tol * scale:
        raise NumericalBreakdown("null-space residual exceeds tolerance")
    gram_err = np.abs(N.T @ N - np.eye(n - m)).max()
    if gram_err > _ORTHONORMALITY_TOL:
        raise NumericalBreakdown("null-space basis lost orthonormality")
    return NullSpaceBasis(n=n, p=n - m, matrix=N, source_tol=tol)


def complement_matrix(basis: NullSpaceBasis) -> np.ndarray:
    """An m-by-n matrix with orthonormal rows whose null space is range(basis).

    Any matrix with this null space defines the same l1-decoding problem,
    so decoders that only know the null space can use this canonical one.
    """
    Q, _ = np.linalg.qr(basis.matrix, mode="complete")
    return np.ascontiguousarray(Q[:, basis.p :].T)


def vector_norms(v) -> tuple[float, float]:
    """(l1, linf) norms of a vector."""
    v = as_vector(v)
    return float(np.abs(v).sum()), float(np.abs(v).max())
