"""curvkit: constant-curvature plane geometry and symmetry verification."""

from .geom import (
    Chart,
    Geodesic,
    Geometry,
    GeometryError,
    IdealPoint,
    ModelPoint,
    antipode_guard,
    convert,
    distance,
    foot_of_perpendicular,
    midpoint,
    signed_distance_to_geodesic,
)

__all__ = [
    "Chart",
    "Geodesic",
    "Geometry",
    "GeometryError",
    "IdealPoint",
    "ModelPoint",
    "antipode_guard",
    "convert",
    "distance",
    "foot_of_perpendicular",
    "midpoint",
    "signed_distance_to_geodesic",
]
