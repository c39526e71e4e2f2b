"""banachforge: exact combinatorics of reduced words over free groups.

Reduced-word algebra and shortlex enumeration, exact-rational density
profiles (plain and translate-extremized), transfer of densities between
words and word pairs through the difference map, word-problem oracles for
concrete groups with kernel profiling, and a budgeted partial-solver
framework with deterministic dovetailing.
"""

from .density import (
    DensityProfile,
    SetPredicate,
    UBGenericityReport,
    WordSet,
    diagonal_set,
    disjoint_translates,
    empty_set,
    full_set,
    is_ub_generic_up_to,
    lower_banach_profile,
    plain_density_profile,
    power_ball_union,
    translate_count,
    upper_banach_profile,
)
from .enumeration import (
    ball_size,
    ball_upper_constant,
    ball_word_at,
    enumerate_ball,
    enumerate_pair_ball,
    enumerate_sphere,
    iter_words,
    pair_ball_lower_constant,
    pair_ball_size_l1,
    pair_ball_size_max,
    pair_ball_upper_constant,
    pair_sphere_size_l1,
    sphere_growth_constant,
    sphere_size,
    sphere_word_at,
)
from .errors import (
    CertificateViolationError,
    GuardRefusedError,
    RadiusExceededError,
    SearchExhaustedError,
    ToolkitError,
    ValidationError,
)
from .groups import (
    CogrowthTable,
    GroupSpec,
    KernelProfile,
    WPOracle,
    cogrowth_estimate,
    kernel_predicate,
    kernel_profile,
    kernel_sphere_count,
)
from .solvers import (
    DecisionEvent,
    DovetailSchedule,
    EscapingSequence,
    PartialSolver,
    build_escaping_sequence,
    closure_of_pairs,
    conjugacy_closure,
    ep_from_wp,
    ep_on_square,
    ep_solver_on,
    escaping_from_enumeration,
    escaping_from_increasing,
    halting_density,
    never_solver,
    nontrivial_on,
    subsequence_strictly_increasing,
    total_ep_solver,
    total_wp_solver,
    ubgeneric_solvable_set,
    wp_from_ep,
    wp_solver_on,
)
from .transfer import (
    GeodesicNeighborhood,
    TransferProfile,
    TransferRow,
    fiber_bruteforce,
    fiber_geodesic,
    fiber_size,
    geodesic_neighborhood,
    midpoint_ball,
    pair_difference,
    preimage_ball_count,
    transfer_profile,
    word_difference,
)
from .words import (
    Alphabet,
    Letter,
    Word,
    WordPair,
    common_prefix_length,
    cyclic_reduction,
    distance,
    free_reduce,
    generator_word,
    is_cyclically_reduced,
    parse_word,
    product_length,
    rotations,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "CertificateViolationError",
    "CogrowthTable",
    "DecisionEvent",
    "DensityProfile",
    "DovetailSchedule",
    "EscapingSequence",
    "GeodesicNeighborhood",
    "GroupSpec",
    "GuardRefusedError",
    "KernelProfile",
    "Letter",
    "PartialSolver",
    "RadiusExceededError",
    "SearchExhaustedError",
    "SetPredicate",
    "ToolkitError",
    "TransferProfile",
    "TransferRow",
    "UBGenericityReport",
    "ValidationError",
    "WPOracle",
    "Word",
    "WordPair",
    "WordSet",
    "ball_size",
    "ball_upper_constant",
    "ball_word_at",
    "build_escaping_sequence",
    "closure_of_pairs",
    "cogrowth_estimate",
    "common_prefix_length",
    "conjugacy_closure",
    "cyclic_reduction",
    "diagonal_set",
    "disjoint_translates",
    "distance",
    "empty_set",
    "enumerate_ball",
    "enumerate_pair_ball",
    "enumerate_sphere",
    "ep_from_wp",
    "ep_on_square",
    "ep_solver_on",
    "escaping_from_enumeration",
    "escaping_from_increasing",
    "fiber_bruteforce",
    "fiber_geodesic",
    "fiber_size",
    "free_reduce",
    "full_set",
    "generator_word",
    "geodesic_neighborhood",
    "halting_density",
    "is_cyclically_reduced",
    "is_ub_generic_up_to",
    "iter_words",
    "kernel_predicate",
    "kernel_profile",
    "kernel_sphere_count",
    "lower_banach_profile",
    "midpoint_ball",
    "never_solver",
    "nontrivial_on",
    "pair_ball_lower_constant",
    "pair_ball_size_l1",
    "pair_ball_size_max",
    "pair_ball_upper_constant",
    "pair_difference",
    "pair_sphere_size_l1",
    "parse_word",
    "plain_density_profile",
    "power_ball_union",
    "preimage_ball_count",
    "product_length",
    "rotations",
    "sphere_growth_constant",
    "sphere_size",
    "sphere_word_at",
    "subsequence_strictly_increasing",
    "total_ep_solver",
    "total_wp_solver",
    "transfer_profile",
    "translate_count",
    "ubgeneric_solvable_set",
    "upper_banach_profile",
    "word_difference",
    "wp_from_ep",
    "wp_solver_on",
]
