"""Piecewise sparse recovery in unions of bases.

Coherence calculus (mutual, block, Babel variants), recovery-condition
evaluation, exact ERC, and OMP / basis pursuit / brute-force solvers over
block-partitioned dictionaries.
"""

try:
    from . import _pwsparse
except ImportError:  # running from the build tree, extension on sys.path
    import _pwsparse
    import sys

    sys.modules[__name__ + "._pwsparse"] = _pwsparse

from ._pwsparse import (  # noqa: F401
    Dictionary,
    NumericalError,
    UsageError,
    babel,
    basis_pursuit,
    block_coherence,
    coherence_profile,
    cond1_general,
    cond2_pair_orthogonal_uniqueness,
    cond3_pair_orthogonal_equivalence,
    cond4_orthogonal_erc,
    cond5_piecewise_uniqueness,
    cond6_piecewise_erc,
    cond_orthogonal_union_bp,
    cond_orthogonal_union_omp,
    cross_block_babel,
    erc_exact,
    gram,
    identity_hadamard,
    l0_bruteforce,
    mutual_coherence,
    omp,
    piecewise_sparse_signal,
    random_orthonormal_basis,
    spark_bruteforce,
    spark_lower_bound_piecewise,
    union_general,
    union_orthogonal,
    within_block_babel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
