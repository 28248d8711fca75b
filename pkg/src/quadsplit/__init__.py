"""Exact-arithmetic classification of differences and quotients of
quadratic matrices, with verified witness construction and a brute-force
oracle over small prime fields."""

from .fields import (
    FieldError,
    PrimeField,
    RationalField,
    RationalFunctionField,
)
from .poly import (
    Factorization,
    NotIrreducible,
    NotMonic,
    Poly,
    ZeroPolynomial,
    factor,
    gcd,
    hasse_derivative,
    homothety,
    irreducible_monic_polys,
    joukowski,
    reciprocal_decompose,
    resultant,
    root_multiplicity,
    trace_of,
    translate,
    xgcd,
)
from .quotient import QuotientRing, embed_poly, is_unit, make_quotient_ring
from .matrix import (
    Matrix,
    MatrixError,
    NotInvertible,
    companion,
    direct_sum,
    evaluate_poly_at_matrix,
    lift_matrix,
    min_poly,
    restrict_scalars,
)
from .canon import (
    AnnihilationFailure,
    InvariantFactors,
    NotSimilar,
    block_cyclic_invariants,
    block_jordan_matrix,
    elementary_divisors,
    find_similarity,
    intertwined,
    invariant_factors,
    invariant_factors_from_elementary,
    kernel_increment,
    primary_split,
)
from .pairalgebra import (
    AnisotropicNorm,
    DegenerateNorm,
    DIFFERENCE_BASIS,
    PairAlgebra,
    QUOTIENT_BASIS,
    hensel_adapted_pair,
    left_regular_representation,
    split_to_matrices,
)
from .quadform import (
    ANISOTROPIC,
    DegenerateForm,
    ISOTROPIC,
    IsotropyVerdict,
    UnsupportedField,
    isotropy,
)
from .roots import RootUnavailable, artin_schreier_root, quadratic_roots, roots_in, sqrt_in_field
from .classify import (
    DIFFERENCE,
    NO,
    QUOTIENT,
    UNKNOWN,
    YES,
    Block,
    Certificate,
    ClassifyError,
    NotInvertibleInput,
    QuadraticPair,
    classify_matrix,
    homothety_witness,
    indecomposable_atlas,
    root_difference_poly,
    root_ratio_poly,
    same_splitting_field,
    translation_witness,
)
from .construct import (
    ConstructError,
    SearchExhausted,
    Witness,
    build_witness,
    search_witness,
    verify_witness,
)
from .oracle import (
    BudgetExceeded,
    ReachabilityTable,
    all_class_representatives,
    canonical_annihilated_forms,
    compare_with_classifier,
    enumerate_reachable,
)

__version__ = "0.1.0"
