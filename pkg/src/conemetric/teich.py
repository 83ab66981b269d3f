"""Edge-length coordinates on the space of flat cone metrics.

Only isometry invariants that can be computed from a single length vector
live here.  :func:`distinguish` is one-sided on purpose: differing
invariants prove two metrics are not isometric, equal invariants prove
nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AssumptionViolated, NonPositiveAngle, NonPositiveScale, TriangulationMismatch
from .flat import TOL_GB, EdgeLengths, check_lengths, cone_angles
from .gluing import Triangulation


def chart_dimension(tri: Triangulation) -> int:
    nv, chi = len(tri.vertex_classes), tri.euler_char
    if nv - chi <= 0:
        raise AssumptionViolated(f"need |V| - chi > 0, got |V|={nv}, chi={chi}")
    return 3 * nv - 3 * chi


def gb_residual(angles, chi: int) -> float:
    angles = list(angles)
    if any(not a > 0 for a in angles):
        raise NonPositiveAngle("cone angles must be positive")
    return math.fsum(2 * math.pi - a for a in angles) - 2 * math.pi * chi


def gb_membership(angles, chi: int, tol: float = TOL_GB) -> bool:
    """Whether the angle vector satisfies the Gauss-Bonnet constraint."""
    if isinstance(angles, dict):
        angles = angles.values()
    return abs(gb_residual(angles, chi)) <= tol


def scale_lengths(l: EdgeLengths, c: float) -> EdgeLengths:
    if not c > 0:
        raise NonPositiveScale(f"scale must be positive, got {c}")
    return check_lengths(l.triangulation, {e: c * v for e, v in l.values.items()})


@dataclass(frozen=True)
class InvariantRecord:
    cone_angles: tuple  # sorted
    area: float
    euler_char: int
    vertex_count: int
    gb_residual: float

    def to_json(self) -> dict:
        return {
            "cone_angles": list(self.cone_angles),
            "area": self.area,
            "euler_char": self.euler_char,
            "vertex_count": self.vertex_count,
            "gb_residual": self.gb_residual,
        }


def invariants(l: EdgeLengths) -> InvariantRecord:
    rep = cone_angles(l)
    tri = l.triangulation
    angles = tuple(sorted(rep.cone_angles.values()))
    return InvariantRecord(
        cone_angles=angles,
        area=rep.area,
        euler_char=tri.euler_char,
        vertex_count=len(tri.vertex_classes),
        gb_residual=gb_residual(angles, tri.euler_char),
    )


@dataclass(frozen=True)
class LengthChartPoint:
    triangulation: Triangulation
    lengths: EdgeLengths


def distinguish(p1, p2, angle_tol: float = 1e-9, area_rtol: float = 1e-9) -> str:
    """``"distinct"`` when the invariants separate the metrics, else ``"inconclusive"``."""
    l1 = p1.lengths if isinstance(p1, LengthChartPoint) else p1
    l2 = p2.lengths if isinstance(p2, LengthChartPoint) else p2
    if l1.triangulation != l2.triangulation:
        raise TriangulationMismatch("points live on different triangulations")
    r1, r2 = invariants(l1), invariants(l2)
    if any(abs(a - b) > angle_tol for a, b in zip(r1.cone_angles, r2.cone_angles)):
        return "distinct"
    if abs(r1.area - r2.area) > area_rtol * max(r1.area, r2.area):
        return "distinct"
    return "inconclusive"
