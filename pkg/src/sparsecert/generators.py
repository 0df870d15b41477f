"""Test-ensemble matrix generators.

Both generators are fully deterministic: the Gaussian ensemble draws its
entries from the documented SplitMix64 + Box-Muller stream in
:mod:`sparsecert.rng`, so a (dims, seed) pair names one exact matrix.
"""

from __future__ import annotations

import math

import numpy as np

from .coherence import normalize_columns
from .exceptions import BadDimensions, NotPowerOfTwo
from .rng import SplitMix64


def gen_gaussian(m: int, n: int, seed: int, normalize: bool = False) -> np.ndarray:
    """An m-by-n matrix of i.i.d. standard normals, row-major draw order.

    Requires m < n.  With ``normalize`` the columns are scaled to unit
    Euclidean norm after generation.
    """
    if m < 1 or n < 1 or m >= n:
        raise BadDimensions(f"need 0 < m < n, got m={m}, n={n}")
    stream = SplitMix64(seed)
    A = np.array([stream.standard_normal() for _ in range(m * n)]).reshape(m, n)
    return normalize_columns(A) if normalize else A


def gen_id_hadamard(m: int) -> np.ndarray:
    """The m x 2m dictionary [I | H/sqrt(m)] with H the Sylvester-Hadamard matrix.

    Requires m to be a power of two; the coherence of the result is
    exactly 1/sqrt(m).
    """
    if m < 1 or m & (m - 1):
        raise NotPowerOfTwo(f"m must be a power of two, got {m}")
    H = np.ones((1, 1))
    while H.shape[0] < m:
        H = np.block([[H, H], [H, -H]])
    return np.hstack([np.eye(m), H / math.sqrt(m)])
