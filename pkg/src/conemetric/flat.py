"""Flat structure on a glued surface: placed triangles, points, radii, angles.

Points of the surface are given by barycentric coordinates ``(b1, b2, b3)``
in some face, weights of corners 1, 2, 3.  A point on a side or at a corner
has several such descriptions; :class:`SurfacePoint` keeps all of them.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    ConflictingLength,
    InvalidBarycentric,
    MissingEdge,
    NonPositive,
    NotOnFace,
    TriangleInequalityViolated,
)
from .gluing import Corner, SideRef, Triangulation, side_end, side_start

TOL_EMBED = 1e-12
TOL_ANGLE = 1e-9
TOL_GB = 1e-9
EPS_SNAP = 1e-12
BARY_SUM_TOL = 1e-9
# reps closer than this (in barycentric max-norm) are the same rep
REP_MERGE_TOL = 1e-11


# ------------------------------------------------------------ edge lengths


@dataclass(frozen=True)
class EdgeLengths:
    """Positive lengths on the edge classes of a triangulation.

    Built through :func:`check_lengths`, which enforces the strict triangle
    inequalities on every face.
    """

    triangulation: Triangulation = field(repr=False)
    values: Mapping  # edge class id (SideRef) -> float

    def side_length(self, face: int, side: int) -> float:
        return self.values[self.triangulation.edge_of[SideRef(face, side)]]

    def face_lengths(self, face: int) -> tuple[float, float, float]:
        return tuple(self.side_length(face, k) for k in (1, 2, 3))

    @cached_property
    def placements(self) -> dict:
        return {f: embed_face(self, f) for f in self.triangulation.faces}

    def scaled(self, c: float) -> "EdgeLengths":
        return EdgeLengths(self.triangulation, {e: c * v for e, v in self.values.items()})

    def as_side_dict(self) -> dict:
        return {str(e): v for e, v in sorted(self.values.items())}


def check_lengths(tri: Triangulation, values: Mapping) -> EdgeLengths:
    """Validate ``values`` as a point of the edge-length cone of ``tri``.

    Keys may be any side of an edge class (``SideRef`` or ``(face, side)``);
    two keys of the same class must agree.
    """
    by_class: dict[SideRef, float] = {}
    for key, val in values.items():
        s = SideRef(*key)
        if s not in tri.edge_of:
            raise MissingEdge(f"no side {s} in this triangulation")
        e = tri.edge_of[s]
        val = float(val)
        if e in by_class and by_class[e] != val:
            raise ConflictingLength(f"edge {e} given lengths {by_class[e]} and {val}")
        by_class[e] = val
    for e in tri.edge_ids:
        if e not in by_class:
            raise MissingEdge(f"no length for edge {e}")
        v = by_class[e]
        if not (v > 0) or math.isinf(v):
            raise NonPositive(f"edge {e} has non-positive length {v}")
    l = EdgeLengths(tri, dict(sorted(by_class.items())))
    for f in tri.faces:
        ls = l.face_lengths(f)
        for k in (1, 2, 3):
            i, j = [m for m in (1, 2, 3) if m != k]
            if not ls[i - 1] + ls[j - 1] > ls[k - 1]:
                raise TriangleInequalityViolated(f, (i, j, k), (ls[i - 1], ls[j - 1], ls[k - 1]))
    return l


def uniform_lengths(tri: Triangulation, value: float = 1.0) -> EdgeLengths:
    return check_lengths(tri, {e: value for e in tri.edge_ids})


def parse_lengths(text: str, tri: Triangulation) -> EdgeLengths:
    """Read ``length <face>.<side> <value>`` lines (``#`` comments allowed)."""
    values: dict[SideRef, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] != "length" or len(toks) != 3:
            raise ValueError(f"line {lineno}: expected 'length <i>.<e> <value>'")
        face, _, side = toks[1].partition(".")
        try:
            s = SideRef(int(face), int(side))
            v = float(toks[2])
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {raw.strip()!r}") from None
        if s not in tri.edge_of:
            raise MissingEdge(f"line {lineno}: no side {s} in this triangulation")
        e = tri.edge_of[s]
        if e in values and values[e] != v:
            raise ConflictingLength(f"line {lineno}: edge {e} given lengths {values[e]} and {v}")
        values[e] = v
    return check_lengths(tri, values)


def format_lengths(l: EdgeLengths) -> str:
    return "".join(f"length {e} {v!r}\n" for e, v in sorted(l.values.items()))


# --------------------------------------------------------------- placement


def heron_area(a: float, b: float, c: float) -> float:
    """Triangle area from side lengths, Kahan's stable arrangement."""
    a, b, c = sorted((a, b, c), reverse=True)
    p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    return 0.25 * math.sqrt(max(p, 0.0))


@dataclass(frozen=True)
class FacePlacement:
    face: int
    corners: tuple  # three (x, y) tuples, counterclockwise

    def point(self, bary) -> tuple[float, float]:
        (x1, y1), (x2, y2), (x3, y3) = self.corners
        b1, b2, b3 = bary
        return (b1 * x1 + b2 * x2 + b3 * x3, b1 * y1 + b2 * y2 + b3 * y3)

    def side(self, k: int):
        return self.corners[side_start(k) - 1], self.corners[side_end(k) - 1]

    @property
    def area(self) -> float:
        (x1, y1), (x2, y2), (x3, y3) = self.corners
        return 0.5 * ((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))


def embed_face(l: EdgeLengths, face: int) -> FacePlacement:
    """Corner 1 at the origin, corner 2 on the positive x-axis, corner 3 above."""
    a, b, c = l.face_lengths(face)
    x3 = (b * b + c * c - a * a) / (2.0 * c)
    y3 = 2.0 * heron_area(a, b, c) / c
    return FacePlacement(face, ((0.0, 0.0), (c, 0.0), (x3, y3)))


def check_bary(bary, tol: float = BARY_SUM_TOL) -> tuple[float, float, float]:
    """Validate a barycentric triple; tiny entries are snapped to zero."""
    if len(bary) != 3:
        raise InvalidBarycentric(f"need three coordinates, got {bary!r}")
    b = [float(v) for v in bary]
    if any(v < -EPS_SNAP or math.isnan(v) for v in b) or abs(sum(b) - 1.0) > tol:
        raise InvalidBarycentric(f"not a barycentric triple: {bary!r}")
    return snap(b)


def snap(b) -> tuple[float, float, float]:
    b = [0.0 if v < EPS_SNAP else v for v in b]
    s = b[0] + b[1] + b[2]
    if s != 1.0:
        b = [v / s for v in b]
    # exact corners stay exact
    for k in range(3):
        if b[k] > 1.0 - EPS_SNAP and b[(k + 1) % 3] == 0.0 and b[(k + 2) % 3] == 0.0:
            b[k] = 1.0
    return (b[0], b[1], b[2])


def face_distance(placement: FacePlacement, p, q) -> float:
    """Euclidean distance between two barycentric points of a placed face."""
    px, py = placement.point(check_bary(p))
    qx, qy = placement.point(check_bary(q))
    return math.hypot(px - qx, py - qy)


# ------------------------------------------------------------ surface points


def bary_on_side(side: int, t: float) -> tuple[float, float, float]:
    """Point at parameter ``t`` from the start corner of ``side``."""
    b = [0.0, 0.0, 0.0]
    b[side_start(side) - 1] = 1.0 - t
    b[side_end(side) - 1] = t
    return (b[0], b[1], b[2])


def _same_rep(a, b) -> bool:
    return a[0] == b[0] and max(abs(u - v) for u, v in zip(a[1], b[1])) <= REP_MERGE_TOL


@dataclass(frozen=True)
class SurfacePoint:
    """A point of the surface, stored as its full set of face representatives."""

    reps: tuple  # sorted ((face, (b1, b2, b3)), ...)

    @property
    def canonical(self):
        return self.reps[0]

    def faces(self) -> set[int]:
        return {f for f, _ in self.reps}

    def reps_in(self, face: int) -> list:
        return [b for f, b in self.reps if f == face]

    @property
    def is_vertex(self) -> bool:
        return any(b.count(0.0) == 2 for _, b in self.reps)

    def same_point(self, other: "SurfacePoint") -> bool:
        return any(_same_rep(r, s) for r in self.reps for s in other.reps)

    def __str__(self):
        f, b = self.canonical
        return f"{f}:{b[0]!r},{b[1]!r},{b[2]!r}"

    def to_json(self):
        f, b = self.canonical
        return {"face": f, "bary": list(b)}


def make_point(tri: Triangulation, face: int, bary) -> SurfacePoint:
    """Close ``(face, bary)`` under all side identifications."""
    if face not in tri.faces:
        raise NotOnFace(f"face {face} out of range")
    start = (face, check_bary(bary))
    reps = [start]
    queue = [start]
    while queue:
        f, b = queue.pop()
        for k in (1, 2, 3):
            if b[k - 1] != 0.0:
                continue
            t = b[side_end(k) - 1]
            other, flipped = tri.side_partner[SideRef(f, k)]
            rep = (other.face, snap(bary_on_side(other.side, 1.0 - t if flipped else t)))
            if not any(_same_rep(rep, r) for r in reps):
                reps.append(rep)
                queue.append(rep)
    return SurfacePoint(tuple(sorted(reps)))


def vertex_point(tri: Triangulation, vid: Corner) -> SurfacePoint:
    b = [0.0, 0.0, 0.0]
    b[vid.corner - 1] = 1.0
    return make_point(tri, vid.face, b)


def parse_point(tri: Triangulation, text: str) -> SurfacePoint:
    """``<face>:<b1>,<b2>,<b3>``"""
    face, _, rest = text.partition(":")
    try:
        bary = [float(v) for v in rest.split(",")]
        f = int(face)
    except ValueError:
        raise InvalidBarycentric(f"cannot parse point {text!r}") from None
    return make_point(tri, f, bary)


def quasi_distance(l: EdgeLengths, face: int, x: SurfacePoint, y: SurfacePoint) -> float:
    """Smallest in-face distance between representatives of ``x`` and ``y`` on ``face``."""
    xs, ys = x.reps_in(face), y.reps_in(face)
    if not xs or not ys:
        raise NotOnFace(f"point has no representative on face {face}")
    pl = l.placements[face]
    best = math.inf
    for p in xs:
        px, py = pl.point(p)
        for q in ys:
            qx, qy = pl.point(q)
            best = min(best, math.hypot(px - qx, py - qy))
    return best


def shared_quasi_distance(l: EdgeLengths, x: SurfacePoint, y: SurfacePoint):
    """``(d, face)`` minimising the face quasi-distance over shared faces, or ``(inf, None)``."""
    best, arg = math.inf, None
    for f in sorted(x.faces() & y.faces()):
        d = quasi_distance(l, f, x, y)
        if d < best:
            best, arg = d, f
    return best, arg


def point_segment_distance(p, a, b) -> float:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - ax - t * dx, p[1] - ay - t * dy)


def safety_radius(l: EdgeLengths, x: SurfacePoint) -> float:
    """Distance from ``x`` to the sides not containing it, minimised over reps."""
    best = math.inf
    for f, b in x.reps:
        pl = l.placements[f]
        p = pl.point(b)
        for k in (1, 2, 3):
            if b[k - 1] == 0.0:
                continue  # side k contains this rep
            best = min(best, point_segment_distance(p, *pl.side(k)))
    return best


def separation_radius(l: EdgeLengths, x: SurfacePoint) -> float:
    """Half the smallest distance between two distinct reps on one face; inf if none."""
    best = math.inf
    for f in x.faces():
        pl = l.placements[f]
        pts = [pl.point(b) for b in x.reps_in(f)]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                best = min(best, 0.5 * math.dist(pts[i], pts[j]))
    return best


def combined_radius(l: EdgeLengths, x: SurfacePoint) -> float:
    return min(safety_radius(l, x), separation_radius(l, x))


# ------------------------------------------------------------------ angles


def corner_angle(placement: FacePlacement, corner: int) -> float:
    p = placement.corners[corner - 1]
    q = placement.corners[corner % 3]
    r = placement.corners[(corner + 1) % 3]
    ux, uy = q[0] - p[0], q[1] - p[1]
    vx, vy = r[0] - p[0], r[1] - p[1]
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


@dataclass(frozen=True)
class AngleReport:
    cone_angles: dict  # vertex id (Corner) -> radians
    corner_angles: dict  # face -> (angle at corner 1, 2, 3)
    area: float

    def to_json(self, tri: Triangulation | None = None) -> dict:
        return {
            "vertices": [
                {"id": f"{v.face}.{v.corner}", "cone_angle": a}
                for v, a in sorted(self.cone_angles.items())
            ],
            "area": self.area,
        }


def cone_angles(l: EdgeLengths) -> AngleReport:
    tri = l.triangulation
    corners = {}
    for f in tri.faces:
        pl = l.placements[f]
        corners[f] = tuple(corner_angle(pl, c) for c in (1, 2, 3))
    theta = {}
    for cls in tri.vertex_classes:
        theta[cls[0]] = math.fsum(corners[c.face][c.corner - 1] for c in cls)
    area = math.fsum(heron_area(*l.face_lengths(f)) for f in tri.faces)
    return AngleReport(theta, corners, area)


def gauss_bonnet_residual(l: EdgeLengths) -> float:
    rep = cone_angles(l)
    chi = l.triangulation.euler_char
    return math.fsum(2 * math.pi - t for t in rep.cone_angles.values()) - 2 * math.pi * chi
