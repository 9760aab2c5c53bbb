"""Exact calculator for characteristic classes on products of projective spaces.

Everything is computed in truncated polynomial rings over the integers
or rationals, with no floating point anywhere: formal group laws,
Chern/Todd calculus on virtual bundles, direct images in an additive
and a multiplicative cohomology model, twisted pushforwards, diagonal
classes, and the classical Riemann-Roch consequences for curves,
surfaces, and hypersurfaces.
"""

from .applications import (
    AbstractCurve,
    AbstractSurface,
    CurveBundle,
    FormSingularityData,
    GRRMismatch,
    NonIntegerChi,
    SIGN_NOTE,
    SurfaceBundle,
    canonical_degree_hypersurface,
    chi_curve,
    chi_surface,
    euler_characteristic_pn,
    hypersurface_grr_identity,
    structure_sheaf_chern,
    verify_grr,
    zeuthen_segre,
)
from .bundles import (
    BundleClass,
    RankMismatch,
    additive_extension,
    character_rows,
    chern_character,
    chern_from_character,
    dual_bundle,
    multiplicative_extension,
    newton_e_to_p,
    newton_p_to_e,
    todd_class,
    todd_rows,
    weight_component,
    whitney_difference,
    whitney_sum,
)
from .rings import (
    INTEGERS,
    RATIONALS,
    InsufficientOrder,
    IntegerDomain,
    NonNilpotentArgument,
    NonUnitConstant,
    OutOfBounds,
    RingElement,
    RingSpec,
    SpecMismatch,
    eval_series,
)
from .series import (
    NotReversible,
    NonzeroInnerConstant,
    TruncatedSeries,
    ZeroConstantTerm,
    exp_deficit_series,
    exponential_series,
    log_one_plus_series,
    standard_series,
    todd_series,
)
from .theories import (
    CHOW,
    CHOW_Q,
    FiltrationViolation,
    GKClass,
    K_THEORY,
    MetricReport,
    Morphism,
    SolverInconsistent,
    TheoryModel,
    diagonal_class,
    factor_projection,
    gk_leading_morphism,
    k_line_class,
    linear_immersion,
    metric_check,
    morphism_in,
    point_projection,
    pullback,
    pushforward,
    ring_of,
    space_tangent,
    tangent_class,
    twist_theory,
    universal_morphism,
)

__version__ = "0.1.0"

__all__ = [
    "AbstractCurve",
    "AbstractSurface",
    "BundleClass",
    "CHOW",
    "CHOW_Q",
    "CurveBundle",
    "FiltrationViolation",
    "FormSingularityData",
    "GKClass",
    "GRRMismatch",
    "INTEGERS",
    "InsufficientOrder",
    "IntegerDomain",
    "K_THEORY",
    "MetricReport",
    "Morphism",
    "NonIntegerChi",
    "NonNilpotentArgument",
    "NonUnitConstant",
    "NonzeroInnerConstant",
    "NotReversible",
    "OutOfBounds",
    "RATIONALS",
    "RankMismatch",
    "RingElement",
    "RingSpec",
    "SIGN_NOTE",
    "SolverInconsistent",
    "SpecMismatch",
    "SurfaceBundle",
    "TheoryModel",
    "TruncatedSeries",
    "ZeroConstantTerm",
    "additive_extension",
    "canonical_degree_hypersurface",
    "character_rows",
    "chern_character",
    "chern_from_character",
    "chi_curve",
    "chi_surface",
    "diagonal_class",
    "dual_bundle",
    "euler_characteristic_pn",
    "eval_series",
    "exp_deficit_series",
    "exponential_series",
    "factor_projection",
    "gk_leading_morphism",
    "hypersurface_grr_identity",
    "k_line_class",
    "linear_immersion",
    "log_one_plus_series",
    "metric_check",
    "morphism_in",
    "multiplicative_extension",
    "newton_e_to_p",
    "newton_p_to_e",
    "point_projection",
    "pullback",
    "pushforward",
    "ring_of",
    "space_tangent",
    "standard_series",
    "structure_sheaf_chern",
    "tangent_class",
    "todd_class",
    "todd_rows",
    "todd_series",
    "twist_theory",
    "universal_morphism",
    "verify_grr",
    "weight_component",
    "whitney_difference",
    "whitney_sum",
    "zeuthen_segre",
]
