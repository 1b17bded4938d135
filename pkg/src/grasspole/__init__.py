"""Exact pole placement over arbitrary fields: Plücker geometry, coprime
factorizations, degeneracy tests and finite-field verifications."""

from __future__ import annotations

from .errors import *  # noqa: F401,F403
from .fields import (
    GF,
    QQ,
    Field,
    FieldSpec,
    Scalar,
    embed_int,
    enumerate_field,
    make_field,
    quadratic_extension,
)
from .poly import (
    NEG_INF,
    BinomialTable,
    Poly,
    binomial_in_field,
    classical_derivative,
    hasse_derivative,
    poly_gcd,
    roots_in_field,
)
from .matrix import (
    ConstMatrix,
    PolyMatrix,
    adjugate,
    det,
    is_left_prime,
    left_kernel_min_basis,
    maximal_minors,
    multi_indices,
    rref,
    stacked_det,
    system_degree,
)
from .grassmann import (
    PluckerVector,
    enumerate_grassmannian,
    gaussian_binomial,
    is_decomposable,
    klein_quadric,
    plucker_of_matrix,
    reconstruct_matrix,
)
from .systems import (
    CoefficientMatrix,
    Compensator,
    FactoredSystem,
    ProjectiveCompensator,
    StateSpace,
    Verdict,
    charpoly_via_factors,
    closed_loop_charpoly,
    coefficient_matrix,
    evaluate_curve_point,
    is_degenerate_exact,
    is_degenerate_rational,
    left_coprime_factorization,
    lemma2_form,
    observability_rank,
    reachability_rank,
    recover_feedback,
)
from .constructions import (
    DegreeMatrix,
    MonomialSystem,
    cauchy_matrix,
    exhaustive_mds_search,
    find_zero_maximal_minor,
    main_theorem_system,
    mds_check,
    monomial_matrix,
    osculating_curve_classical,
    osculating_curve_hasse,
    superregular_check,
)
from .poleplace import (
    CensusReport,
    FiberSolution,
    census,
    fiber_solve_2x2,
    orbit_decomposition,
    schubert_number,
    verify_f2_theorem,
)

__version__ = "0.1.0"
