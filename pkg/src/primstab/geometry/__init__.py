"""Matrix lifts of trace triples and the geometry of H³ they act on."""

from primstab.geometry.hyperbolic import (
    O,
    CommonPerpendicular,
    Geodesic,
    H3Point,
    apply_moebius,
    axis,
    common_perpendicular,
    distance_to_geodesic,
    h3_distance,
    hexagon_bound,
    hyperelliptic_axes,
    midpoint,
    pi_rotation,
)
from primstab.geometry.moebius import (
    INF,
    ComplexLength,
    IdealInfinity,
    IdealPoint,
    IsometryKind,
    LengthCheck,
    MoebiusMatrix,
    complex_half_length,
    evaluate_word,
    is_infinite,
    length_trace_check,
    lift_representation,
    product_length_check,
)

__all__ = [
    "INF",
    "IdealInfinity",
    "IdealPoint",
    "is_infinite",
    "MoebiusMatrix",
    "lift_representation",
    "evaluate_word",
    "IsometryKind",
    "ComplexLength",
    "complex_half_length",
    "LengthCheck",
    "length_trace_check",
    "product_length_check",
    # H³
    "O",
    "H3Point",
    "Geodesic",
    "CommonPerpendicular",
    "apply_moebius",
    "h3_distance",
    "midpoint",
    "axis",
    "distance_to_geodesic",
    "common_perpendicular",
    "pi_rotation",
    "hyperelliptic_axes",
    "hexagon_bound",
]
