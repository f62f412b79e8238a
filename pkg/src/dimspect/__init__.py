"""Dimension spectra between Hausdorff and box dimension.

Exact evaluators for solved families (convergent sequences, products,
self-affine carpets), a restricted-cover optimizer turning point clouds
into numerical spectra, and constructive measure tools certifying lower
bounds.
"""

from .core import (
    MAX_DEPTH,
    MIN_SCALE,
    AtomicMeasure,
    DepthLimitError,
    DimensionSpectrum,
    DimspectError,
    EmptyIntersectionError,
    GridMismatchError,
    InvariantError,
    PointCloud,
    RangeTooNarrowError,
    ScaleRange,
    ScaleRangeTooDeepError,
    SpectrumSample,
    ValidationError,
    default_theta_grid,
    scale_bounds,
    spectrum_merge,
)
from .formulas import (
    BoundInputs,
    assouad_lower_bound,
    constant_spectrum,
    envelope_bound,
    example_spectrum,
    example_spectrum_curve,
    product_bounds,
    sequence_dim,
    sequence_spectrum,
)
from .carpet import (
    CarpetDerived,
    CarpetSpec,
    approx_square_measure,
    box_dim,
    carpet_points,
    carpet_spectrum,
    entropy,
    hausdorff_dim,
    lower_bound_theta,
    log_upper_excess,
    mcmullen_weights,
    upper_bound_theta,
)
from .covers import (
    CoverSet,
    RestrictedCover,
    cover_cost,
    fp_witness_cover,
    geometric_menu,
    optimal_cover_1d,
    optimal_cover_dyadic,
    refine_cover,
)
from .estimate import (
    CriticalExponent,
    coupled_truncation,
    critical_exponent,
    estimate_spectrum,
    flog_points,
    fp_points,
)
from .frostman import (
    DyadicCascade,
    FrostmanResult,
    MdpEntry,
    MdpReport,
    build_frostman_measure,
    check_mdp,
    fp_witness_measure,
    separated_witness_measure,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DEPTH",
    "MIN_SCALE",
    "AtomicMeasure",
    "BoundInputs",
    "CarpetDerived",
    "CarpetSpec",
    "CoverSet",
    "CriticalExponent",
    "DepthLimitError",
    "DimensionSpectrum",
    "DimspectError",
    "DyadicCascade",
    "EmptyIntersectionError",
    "FrostmanResult",
    "GridMismatchError",
    "InvariantError",
    "MdpEntry",
    "MdpReport",
    "PointCloud",
    "RangeTooNarrowError",
    "RestrictedCover",
    "ScaleRange",
    "ScaleRangeTooDeepError",
    "SpectrumSample",
    "ValidationError",
    "approx_square_measure",
    "assouad_lower_bound",
    "box_dim",
    "build_frostman_measure",
    "carpet_points",
    "carpet_spectrum",
    "check_mdp",
    "constant_spectrum",
    "coupled_truncation",
    "cover_cost",
    "critical_exponent",
    "default_theta_grid",
    "entropy",
    "envelope_bound",
    "estimate_spectrum",
    "example_spectrum",
    "example_spectrum_curve",
    "flog_points",
    "fp_points",
    "fp_witness_cover",
    "fp_witness_measure",
    "geometric_menu",
    "hausdorff_dim",
    "log_upper_excess",
    "lower_bound_theta",
    "mcmullen_weights",
    "optimal_cover_1d",
    "optimal_cover_dyadic",
    "product_bounds",
    "refine_cover",
    "scale_bounds",
    "separated_witness_measure",
    "sequence_dim",
    "sequence_spectrum",
    "spectrum_merge",
    "upper_bound_theta",
]
