"""
Arrkit Topology - invariants of complex line arrangement complements.

From a list of linear forms (or a braid monodromy) to the fundamental
group, its Alexander matrix, the depth of characters, resonance
varieties, Betti numbers of abelian covers and Hirzebruch surfaces, and
low-index subgroup counts.

Example:
    from arrkit_topology import Arrangement, arrangement_group, alexander_matrix, beta_invariants

    braid = Arrangement.from_coefficients("braid", [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                                    (1, -1, 0), (1, 0, -1), (0, 1, -1)])
    group = arrangement_group(braid)
    beta_invariants(alexander_matrix(group.presentation), p=2, q=0)[1]   # 15
"""

from arrkit_topology.arrangement import (
    Arrangement,
    IntersectionLattice,
    Multiplicities,
    affine_lattice_from_points,
    braid_subarrangements,
    compute_lattice,
    cone,
    cone_lattice,
    count_braid_subarrangements,
    decone,
    decone_lattice,
    lattice_isomorphism,
    multiplicities,
    poincare,
    restrict,
)
from arrkit_topology.braids import (
    FreeWord,
    MonodromyBraid,
    PureBraidWord,
    artin_act,
    delete_strand,
    delete_strands,
    full_twist,
    monodromy_factorization_holds,
    real_braid_monodromy,
)
from arrkit_topology.budget import Budget
from arrkit_topology.counting import (
    HallReport,
    RankTable,
    conjectural_ranks,
    delta_abelian_p,
    delta_metabelian,
    delta_metabelian_of,
    exponents_from_poincare,
    is_fiber_type_candidate,
    lcs_fibertype,
    lcs_series_check,
    rank_table,
    subgroup_counts,
    theta_cc,
    theta_free,
    witt,
)
from arrkit_topology.covers import (
    CoverReport,
    PeriodResult,
    b1_abelian_cover,
    b1_congruence,
    b1_cyclic_cover,
    b1_hirzebruch,
    b1_hirzebruch_by_restriction,
    chern_numbers,
    cover_report,
    detect_period,
    pencil_b1,
    pencil_chern_numbers,
    tayama_bound,
)
from arrkit_topology.errors import (
    ArrangementError,
    BudgetExceededError,
    GenericityError,
    PresentationError,
)
from arrkit_topology.fox import (
    AlexanderMatrix,
    KernelHomology,
    LinearAlexanderMatrix,
    alexander_matrix,
    congruence_images,
    fox_derivative,
    gassner,
    gassner_alexander,
    kernel_homology,
    linearize,
    linearize_from_lattice,
)
from arrkit_topology.hall import delta_symmetric, hall_homomorphism_counts, hall_subgroup_counts
from arrkit_topology.jumping import (
    Character,
    DepthProfile,
    JumpTable,
    beta_invariants,
    depth_at,
    depth_char0,
    depth_profile,
    nu_invariants,
)
from arrkit_topology.presentation import (
    ArrangementGroup,
    GroupPresentation,
    arrangement_group,
    cone_presentation,
    presentation,
    semidirect_presentation,
    simplify,
)
from arrkit_topology.resonance import (
    ResonanceComponent,
    ResonanceReport,
    cross_certify,
    neighborly_components,
    resonance_components,
    resonance_strata,
)
from arrkit_topology.slicing import SliceData, generic_slice

__version__ = "0.1.0"

__all__ = [
    # Arrangements
    "Arrangement",
    "IntersectionLattice",
    "Multiplicities",
    "affine_lattice_from_points",
    "braid_subarrangements",
    "compute_lattice",
    "cone",
    "cone_lattice",
    "count_braid_subarrangements",
    "decone",
    "decone_lattice",
    "lattice_isomorphism",
    "multiplicities",
    "poincare",
    "restrict",
    "SliceData",
    "generic_slice",
    # Braids and presentations
    "FreeWord",
    "MonodromyBraid",
    "PureBraidWord",
    "artin_act",
    "delete_strand",
    "delete_strands",
    "full_twist",
    "monodromy_factorization_holds",
    "real_braid_monodromy",
    "ArrangementGroup",
    "GroupPresentation",
    "arrangement_group",
    "cone_presentation",
    "presentation",
    "semidirect_presentation",
    "simplify",
    # Fox calculus
    "AlexanderMatrix",
    "KernelHomology",
    "LinearAlexanderMatrix",
    "alexander_matrix",
    "congruence_images",
    "fox_derivative",
    "gassner",
    "gassner_alexander",
    "kernel_homology",
    "linearize",
    "linearize_from_lattice",
    # Jumping loci
    "Character",
    "DepthProfile",
    "JumpTable",
    "beta_invariants",
    "depth_at",
    "depth_char0",
    "depth_profile",
    "nu_invariants",
    "ResonanceComponent",
    "ResonanceReport",
    "cross_certify",
    "neighborly_components",
    "resonance_components",
    "resonance_strata",
    # Covers
    "CoverReport",
    "PeriodResult",
    "b1_abelian_cover",
    "b1_congruence",
    "b1_cyclic_cover",
    "b1_hirzebruch",
    "b1_hirzebruch_by_restriction",
    "chern_numbers",
    "cover_report",
    "detect_period",
    "pencil_b1",
    "pencil_chern_numbers",
    "tayama_bound",
    # Counting
    "HallReport",
    "RankTable",
    "conjectural_ranks",
    "delta_abelian_p",
    "delta_metabelian",
    "delta_metabelian_of",
    "delta_symmetric",
    "exponents_from_poincare",
    "hall_homomorphism_counts",
    "hall_subgroup_counts",
    "is_fiber_type_candidate",
    "lcs_fibertype",
    "lcs_series_check",
    "rank_table",
    "subgroup_counts",
    "theta_cc",
    "theta_free",
    "witt",
    # Limits and errors
    "Budget",
    "ArrangementError",
    "BudgetExceededError",
    "GenericityError",
    "PresentationError",
]
