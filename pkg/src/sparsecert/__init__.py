"""Certification of exact sparse-recovery properties of fixed measurement matrices.

Given a full-rank m-by-n measurement matrix A with m < n, this package
computes three nested sparsity certificates:

* ``k1`` from the l1/linf width of the null space of A (n small linear
  programs over the faces of the unit-linf cross-section),
* ``k2`` from the mutual coherence of A when its columns are unit vectors,
* ``k_star``, the exact recoverability threshold, by checking strict
  k-balancedness of the null space over all supports of each size.

All three are validated end to end against an l1-minimizing decoder and an
exhaustive l0 oracle.  A command-line front end emits machine-readable JSON
reports.
"""

__version__ = "0.1.0"

from .cert import (
    BalancednessReport,
    Partition,
    RecoveryResult,
    basis_pursuit,
    counterexample_from_witness,
    l0_oracle,
    max_certified_k,
    recovery_experiment,
    strict_k_balanced,
    support_balance_mu,
)
# the coherence() operation itself stays on the submodule so the
# ``sparsecert.coherence`` module name is not shadowed
from .coherence import (
    CoherenceReport,
    compare_bounds,
    is_dictionary,
    normalize_columns,
    sparsity_bound_k2,
)
from .generators import gen_gaussian, gen_id_hadamard
from .linalg import (
    NullSpaceBasis,
    as_matrix,
    as_vector,
    complement_matrix,
    null_space_basis,
    qr_decompose,
    rank,
    vector_norms,
)
from .matio import load_matrix, save_matrix
from .width import (
    FaceProblem,
    WidthReport,
    face_min,
    gamma_reciprocal,
    gamma_width,
    sparsity_bound_k1,
)

__all__ = [
    "__version__",
    "BalancednessReport",
    "CoherenceReport",
    "FaceProblem",
    "NullSpaceBasis",
    "Partition",
    "RecoveryResult",
    "WidthReport",
    "as_matrix",
    "as_vector",
    "basis_pursuit",
    "compare_bounds",
    "complement_matrix",
    "counterexample_from_witness",
    "face_min",
    "gamma_reciprocal",
    "gamma_width",
    "gen_gaussian",
    "gen_id_hadamard",
    "is_dictionary",
    "l0_oracle",
    "load_matrix",
    "max_certified_k",
    "normalize_columns",
    "null_space_basis",
    "qr_decompose",
    "rank",
    "recovery_experiment",
    "save_matrix",
    "sparsity_bound_k1",
    "sparsity_bound_k2",
    "strict_k_balanced",
    "support_balance_mu",
    "vector_norms",
]
