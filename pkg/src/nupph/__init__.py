"""Nonlinear PPH reconstruction on non-uniform grids."""

from .analysis import ConvexityReport, OrderStudy, convexity_report, order_study, sup_error
from .errors import (
    ConfigError,
    GridError,
    LengthMismatch,
    NonPositiveSpacing,
    NotConvexData,
    NotStrictlyIncreasing,
    NupphError,
    OutOfRange,
    ParseError,
    SamplerFailure,
    TooFewPoints,
)
from .grid import NonUniformGrid, SecondDiffs, Stencil, build_grid, refine_dyadic, second_diffs, stencil_at
from .lagrange import (
    CenteredCubic,
    CenteredQuadratic,
    evaluate,
    lagrange_cubic,
    lagrange_cubic_via_matrix,
    lagrange_quadratic_left,
    second_derivative,
)
from .means import (
    Arithmetic,
    Harmonic,
    MeanKind,
    TranslationParams,
    Translated,
    Weights,
    arithmetic_mean,
    harmonic_mean,
    translated,
    translated_mean,
    translation,
    weights,
)
from .pph import PphCase, PphReconstruction, classify, coefficient_gap, modified_endpoint, pph_reconstruct, reconstruct

__version__ = "0.1.0"
