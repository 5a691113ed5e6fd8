"""Switching constructions and cospectrality certificates for gain graphs.

A gain graph carries a group element on each oriented edge, the reverse
orientation carrying the inverse.  This package builds finite groups, does
exact arithmetic in their group algebras, verifies the partition conditions
that make a switching possible, constructs the switched graph and its
switching matrix, and certifies that the switch preserves the exact
trace-moment fingerprint (and, under a unitary representation, the
Hermitian spectrum).
"""

from .scalars import GaussianRational
from .groups import (
    Group,
    GroupElement,
    conjugacy_class_of,
    cyclic_group,
    inverse,
    make_group,
    op,
    symmetric_group,
    table_group,
)
from .algebra import (
    ClassFunction,
    GAMatrix,
    GroupAlgebraElement,
    ga_add,
    ga_mul,
    ga_scale,
    mat_mul,
    mat_star,
    mat_trace,
    mu,
    star,
    structured,
)
from .graphs import (
    GainGraph,
    SwitchingFunction,
    adjacency,
    apply_switching,
    build_gain_graph,
    psi,
    psi_pair,
)
from .reps import (
    ExactComplexMatrix,
    Representation,
    apply_rep,
    apply_rep_mat,
    hermitian_spectrum,
    make_rep,
)
from .switching import (
    BlockLemmaReport,
    CaseResolution,
    ConditionFailure,
    PartitionVerdict,
    WQHPartition,
    block_sum_completion,
    build_switch_matrix,
    check_block_lemma,
    d_correction,
    pair_switch_block,
    pair_submatrix,
    switch_graph,
    verify_gwqh,
    verify_piwqh,
    verify_theorem_gcosp,
    verify_theorem_picosp,
)
from .cospectral import (
    SpectralFingerprint,
    certificate_check,
    default_moment_count,
    fingerprint,
    g_cospectral,
    pi_cospectral,
    walk_trace_oracle,
)
from .search import (
    IsoVerdict,
    SearchLimits,
    SearchResult,
    find_wqh_partitions,
    is_nontrivial,
    pi_kernel_profile_pairs,
    random_piwqh_instance,
    random_wqh_instance,
    switching_isomorphic,
    witness_identity_holds,
)
from .fixtures import DEMOS, demo_s4_17, demo_t4_13

__version__ = "0.1.0"
