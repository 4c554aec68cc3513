"""Certified height computations for algebraic numbers, projective points,
and low-dimensional cycles, plus the explicit-constants bookkeeping that
turns them into finiteness statements.

The package splits into three layers:

* exact polynomial arithmetic and certified root isolation
  (`unipoly`, `bipoly`, `mpoly`, `factor`, `roots`),
* height functionals built on top of it (`heights`, `northcott`,
  `generators`, `chow`, `bertini`),
* an expression engine for the explicit constants (`constants`).

Everything user-facing is re-exported here; the CLI lives in
`heightlab.cli`.
"""

from .unipoly import (
    UniPoly,
    poly_gcd,
    squarefree_part,
    is_squarefree,
    squarefree_decompose,
    resultant,
    discriminant,
    sturm_count,
)
from .bipoly import BiPoly, resultant_t
from .mpoly import MPoly
from .polyparse import ParseError, parse_poly
from .factor import (
    DEGREE_CAP,
    DegreeCapExceeded,
    factor_rationals,
    is_irreducible,
    squarefree_part_certified,
)
from .roots import (
    ComplexBall,
    PrecisionExhausted,
    complex_roots,
    select_root,
    real_ball_count,
)
from .heights import (
    HeightValue,
    ProjectivePoint,
    AlgebraicNumber,
    mahler_root_height,
    mahler_integral_height,
    height_algebraic,
    height_point,
    height_poly,
    SandwichReport,
    sandwich_check,
)
from .northcott import (
    SequenceSpec,
    SequenceProfile,
    ProfileRow,
    NorthcottEstimate,
    RootTrackingError,
    LengthConditionFailed,
    PrimeFamilyCertificate,
    iterate_sequence,
    conjugate_tracking_heights,
    habegger_gamma,
    habegger_bound,
    recurrence_check,
    selmer_family,
    prime_constant_family,
    radical_tower,
    unramified_tower_bound,
)
from .generators import (
    SearchBudgetExceeded,
    NumberFieldSpec,
    OrderElement,
    minkowski_box_T,
    search_small_generator,
)
from .chow import (
    Hypersurface,
    ScaleCapExceeded,
    LineContained,
    SphereIntegralEstimate,
    ZeroCycleChow,
    RemondInstance,
    RemondReport,
    sphere_log_integral,
    chow_height_point,
    chow_dual_form,
    chow_height_hypersurface,
    zero_cycle_height,
    intersect_conic_line,
    remond_check,
)
from .bertini import (
    SmoothnessUndecided,
    NotSmooth,
    SectionBudgetExceeded,
    SectionCandidate,
    SectionBoundReport,
    smoothness_check,
    section_search,
    theorem12_bound_check,
)
from .constants import (
    BoundExpr,
    genus_cap,
    theta_ambient,
    bost_david_gap,
    derive_c31,
    c31_sweep_ok,
    c31_expr,
    remond_theta_expr,
    remond_theta_log,
    c9,
    c7_chain,
    c10_chain,
    c13_chain,
    C3_chain,
    theorem14_compose,
    ZarhinRecord,
    zarhin_factors,
    torsion_degree,
    faltbad_coefficient,
    honda_compose,
    constants_report,
)

__version__ = "0.1.0"

__all__ = [
    "UniPoly", "poly_gcd", "squarefree_part", "is_squarefree",
    "squarefree_decompose", "resultant", "discriminant", "sturm_count",
    "BiPoly", "resultant_t", "MPoly", "ParseError", "parse_poly",
    "DEGREE_CAP", "DegreeCapExceeded", "factor_rationals", "is_irreducible",
    "squarefree_part_certified",
    "ComplexBall", "PrecisionExhausted", "complex_roots", "select_root",
    "real_ball_count",
    "HeightValue", "ProjectivePoint", "AlgebraicNumber",
    "mahler_root_height", "mahler_integral_height", "height_algebraic",
    "height_point", "height_poly", "SandwichReport", "sandwich_check",
    "SequenceSpec", "SequenceProfile", "ProfileRow", "NorthcottEstimate",
    "RootTrackingError", "LengthConditionFailed", "PrimeFamilyCertificate",
    "iterate_sequence", "conjugate_tracking_heights", "habegger_gamma",
    "habegger_bound", "recurrence_check", "selmer_family",
    "prime_constant_family", "radical_tower", "unramified_tower_bound",
    "SearchBudgetExceeded", "NumberFieldSpec", "OrderElement",
    "minkowski_box_T", "search_small_generator",
    "Hypersurface", "ScaleCapExceeded", "LineContained",
    "SphereIntegralEstimate", "ZeroCycleChow", "RemondInstance",
    "RemondReport", "sphere_log_integral", "chow_height_point",
    "chow_dual_form", "chow_height_hypersurface", "zero_cycle_height",
    "intersect_conic_line", "remond_check",
    "SmoothnessUndecided", "NotSmooth", "SectionBudgetExceeded",
    "SectionCandidate", "SectionBoundReport", "smoothness_check",
    "section_search", "theorem12_bound_check",
    "BoundExpr", "genus_cap", "theta_ambient", "bost_david_gap",
    "derive_c31", "c31_sweep_ok", "c31_expr", "remond_theta_expr",
    "remond_theta_log", "c9", "c7_chain", "c10_chain", "c13_chain",
    "C3_chain", "theorem14_compose", "ZarhinRecord", "zarhin_factors",
    "torsion_degree", "faltbad_coefficient", "honda_compose",
    "constants_report",
    "__version__",
]
