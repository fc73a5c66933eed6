"""Exact Coxeter-length series for pattern avoidance in affine symmetric groups."""
from .abacus import (
    AbacusCoords,
    Bias,
    GapVector,
    bias_of,
    bott_series,
    cone_coords,
    delta_vector,
    enumerate_biases,
    from_cone_coords,
    from_gap_vector,
    gap_vector,
    length_from_gaps,
)
from .affine_core import (
    AffinePermutation,
    Pattern,
    PatternInstance,
    contains_pattern,
    coxeter_length,
    flattening,
    make_affine,
    normalize_pattern,
    parabolic_decompose,
    strand_count,
    value_at,
)
from .enumeration import (
    Classification,
    CornerReport,
    classify_combinatorial,
    classify_series,
    container_counts,
    pattern_series,
    probe_union_convexity,
    tight_corner_exists,
)
from .pattern_geometry import (
    StrandAssignment,
    build_system,
    member,
    shifts,
    strand_assignments,
)
from .polyhedra import (
    Polyhedron,
    count_by_weight,
    eliminate,
    integer_point_exists,
    recession_rays,
    vertices_and_rays,
)
from .series import (
    Polynomial,
    RationalFunction,
    classify_behavior,
    expand,
    fit_rational,
    rf_arith,
)

__version__ = "0.1.0"

__all__ = [
    "AbacusCoords",
    "Bias",
    "GapVector",
    "bias_of",
    "bott_series",
    "cone_coords",
    "delta_vector",
    "enumerate_biases",
    "from_cone_coords",
    "from_gap_vector",
    "gap_vector",
    "length_from_gaps",
    "AffinePermutation",
    "Pattern",
    "PatternInstance",
    "contains_pattern",
    "coxeter_length",
    "flattening",
    "make_affine",
    "normalize_pattern",
    "parabolic_decompose",
    "strand_count",
    "value_at",
    "Classification",
    "CornerReport",
    "classify_combinatorial",
    "classify_series",
    "container_counts",
    "pattern_series",
    "probe_union_convexity",
    "tight_corner_exists",
    "StrandAssignment",
    "build_system",
    "member",
    "shifts",
    "strand_assignments",
    "Polyhedron",
    "count_by_weight",
    "eliminate",
    "integer_point_exists",
    "recession_rays",
    "vertices_and_rays",
    "Polynomial",
    "RationalFunction",
    "classify_behavior",
    "expand",
    "fit_rational",
    "rf_arith",
    "__version__",
]
