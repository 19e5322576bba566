"""Exact constructor and invariant engine for graded simple algebras.

A presentation (subgroup H of a finite group G, exponent cocycle on H, tuple
of G-elements) determines a graded simple algebra: a twisted group algebra
tensored with a matrix algebra. This package builds those algebras exactly
over cyclotomic scalars, normalizes presentations, computes the invariant
subgroup chain and minimal scalar subfield, classifies graded-division-form
existence and verbal primeness, and provides a brute-force graded polynomial
identity oracle with structured witness constructions.
"""

from .algebra import (
    AlgElement,
    GradedAlgebra,
    KFormReport,
    KFormResult,
    bridge,
    build_k_form,
    multiply,
    relate,
    twisted_group_algebra,
)
from .config import CAPS, Caps
from .cyclo import CycScalar, SubfieldDescriptor, as_cyc, phi
from .errors import (
    BudgetExceeded,
    CapExceeded,
    CocycleError,
    GForgeError,
    GroupError,
    InternalError,
    ParseError,
    PreconditionError,
    PresentationError,
)
from .groups import (
    CosetMultiset,
    Group,
    SubgroupData,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    quotient_group,
    semidirect_product,
    subgroup_group,
)
from .identities import (
    GradedPolynomial,
    IdentityReport,
    PathReport,
    WitnessBundle,
    binomial_polynomial,
    build_m_product,
    build_witness,
    evaluate,
    identity_report,
    is_good_permutation,
    is_identity,
    linearize,
    nonvanishing_set,
    path_check,
    poly_mul,
    pure_split,
    rename_variables,
)
from .presentation import (
    ClassificationFlags,
    InvariantChain,
    NormalForm,
    Presentation,
    ValidationReport,
    apply_move,
    classify,
    compute_KNS,
    full_derivative,
    iso_test,
    iso_witness,
    minimal_field,
    normalize,
    normalize_with_details,
    pointwise_derivative,
    validate_presentation,
)
from .twisted import (
    BinomialDatum,
    Cocycle,
    binomial_datum,
    binomial_ratio,
    conjugate_cocycle,
    find_primitive_binomial,
    galois_character,
    galois_twist,
    h2_classes,
    image_mu_n,
    is_binomial_identity,
    is_cohomologous,
    lift_unit,
    make_cocycle,
    shift_by_coboundary,
    trivial_cocycle,
)

__all__ = [
    "CAPS",
    "Caps",
    "GForgeError",
    "ParseError",
    "PreconditionError",
    "GroupError",
    "CocycleError",
    "PresentationError",
    "CapExceeded",
    "BudgetExceeded",
    "InternalError",
    "CycScalar",
    "SubfieldDescriptor",
    "as_cyc",
    "phi",
    "Group",
    "SubgroupData",
    "CosetMultiset",
    "cyclic",
    "dihedral",
    "direct_product",
    "semidirect_product",
    "from_permutations",
    "subgroup_group",
    "quotient_group",
    "Cocycle",
    "BinomialDatum",
    "make_cocycle",
    "trivial_cocycle",
    "binomial_ratio",
    "binomial_datum",
    "is_binomial_identity",
    "find_primitive_binomial",
    "image_mu_n",
    "galois_character",
    "conjugate_cocycle",
    "galois_twist",
    "lift_unit",
    "shift_by_coboundary",
    "is_cohomologous",
    "h2_classes",
    "Presentation",
    "ValidationReport",
    "InvariantChain",
    "ClassificationFlags",
    "NormalForm",
    "validate_presentation",
    "apply_move",
    "compute_KNS",
    "minimal_field",
    "normalize",
    "normalize_with_details",
    "classify",
    "pointwise_derivative",
    "full_derivative",
    "iso_witness",
    "iso_test",
    "GradedAlgebra",
    "AlgElement",
    "KFormReport",
    "KFormResult",
    "multiply",
    "relate",
    "bridge",
    "twisted_group_algebra",
    "build_k_form",
    "GradedPolynomial",
    "IdentityReport",
    "PathReport",
    "WitnessBundle",
    "rename_variables",
    "poly_mul",
    "evaluate",
    "identity_report",
    "is_identity",
    "linearize",
    "is_good_permutation",
    "pure_split",
    "path_check",
    "build_witness",
    "nonvanishing_set",
    "binomial_polynomial",
    "build_m_product",
]

__version__ = "0.1.0"
