"""Zero forcing and signed zero forcing for graphs and sign patterns.

The signed game plays on a square sign pattern with fixed periphery (no ?
off the diagonal); its minimum forcing set size bounds the maximum nullity
of any real matrix realizing the pattern.  This package computes the
classical, signed, and branched forcing numbers exactly, emits replayable
certificates, and verifies the nullity bound with exact rational rank
computations.
"""

from .bitset import bits, mask_from_one_based, mask_of, one_based
from .bounds import (
    CliqueCover,
    cc_nullity_lower_bound,
    clique_cover_number,
    known_formulas,
    lkn_forcing_set,
    product_forcing_set,
    witness_matrix,
)
from .engine import (
    BranchCertificate,
    GameState,
    RuleInstance,
    Transcript,
    applicable_instances,
    apply_instance,
    branched_forces,
    classical_derived,
    eager_closure,
    signed_forces,
    verify_branch_certificate,
    verify_transcript,
)
from .exact import ExactMatrix, RankReport, exact_det, exact_rank
from .graphs import (
    Graph,
    cartesian_product,
    complete_graph,
    hypercube,
    line_graph,
    parse_graph6,
    random_tree,
    serialize_graph6,
)
from .minimize import (
    ForcingNumberResult,
    branched_number,
    signed_zero_forcing_number,
    zero_forcing_number,
)
from .oracle import (
    SampleConfig,
    kernel_vanishing_check,
    marker_consistency_check,
    nullity_lower_bound_search,
    sample_pattern_matrix,
    verify_nullity_bound,
)
from .patterns import (
    Sign,
    SignPattern,
    hadamard_pattern,
    in_neighbors,
    invert,
    multiply,
    parse_pattern,
    serialize_pattern,
    z_pattern_of_graph,
)

__version__ = "0.1.0"
