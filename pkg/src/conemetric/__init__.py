"""Flat cone metrics on surfaces glued from Euclidean triangles."""

__version__ = "0.1.0"

from .curves import (
    FaceCurve,
    LengthReport,
    SurfaceCurve,
    check_length_preservation,
    curve_length,
    face_curve_length,
    surface_curve_length,
)
from .flat import (
    AngleReport,
    EdgeLengths,
    FacePlacement,
    SurfacePoint,
    check_lengths,
    combined_radius,
    cone_angles,
    corner_angle,
    embed_face,
    face_distance,
    gauss_bonnet_residual,
    make_point,
    parse_lengths,
    parse_point,
    quasi_distance,
    safety_radius,
    separation_radius,
)
from .geodesic import DistanceEngine, StripUnfolding, build_engine
from .gluing import (
    Corner,
    GluingSpec,
    Pairing,
    SideRef,
    Triangulation,
    euler_characteristic,
    orbit_of_corner,
    orbit_of_side,
    parse_spec,
    serialize,
    validate,
)
from .teich import (
    InvariantRecord,
    LengthChartPoint,
    chart_dimension,
    distinguish,
    gb_membership,
    invariants,
    scale_lengths,
)

__all__ = [
    "AngleReport",
    "Corner",
    "DistanceEngine",
    "EdgeLengths",
    "FaceCurve",
    "FacePlacement",
    "GluingSpec",
    "InvariantRecord",
    "LengthChartPoint",
    "LengthReport",
    "Pairing",
    "SideRef",
    "StripUnfolding",
    "SurfaceCurve",
    "SurfacePoint",
    "Triangulation",
    "build_engine",
    "chart_dimension",
    "check_length_preservation",
    "check_lengths",
    "combined_radius",
    "cone_angles",
    "corner_angle",
    "curve_length",
    "distinguish",
    "embed_face",
    "euler_characteristic",
    "face_curve_length",
    "face_distance",
    "gauss_bonnet_residual",
    "gb_membership",
    "invariants",
    "make_point",
    "orbit_of_corner",
    "orbit_of_side",
    "parse_lengths",
    "parse_point",
    "parse_spec",
    "quasi_distance",
    "safety_radius",
    "scale_lengths",
    "separation_radius",
    "serialize",
    "surface_curve_length",
    "validate",
]
