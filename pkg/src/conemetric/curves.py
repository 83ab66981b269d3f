"""Piecewise-linear curves and their lengths.

A :class:`FaceCurve` is a polyline inside one face; a :class:`SurfaceCurve`
chains such polylines across faces.  Its length under the face metric is
the sum of chord lengths.  Its length under the surface metric is a
supremum of partition sums; :func:`surface_curve_length` approximates that
supremum by bisecting partition intervals until every interval is short
compared to the combined radius of one of its endpoints, at which point
each term of the sum is an in-face chord and the sum is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConvergenceNotReached, InvalidBarycentric
from .flat import EdgeLengths, SurfacePoint, check_bary, combined_radius, make_point

DEPTH_MAX = 20


@dataclass(frozen=True)
class FaceCurve:
    face: int
    points: tuple

    def __post_init__(self):
        pts = tuple(check_bary(p) for p in self.points)
        if len(pts) < 2:
            raise InvalidBarycentric("a face curve needs at least two points")
        for p, q in zip(pts, pts[1:]):
            if p == q:
                raise InvalidBarycentric(f"repeated consecutive point {p}")
        object.__setattr__(self, "points", pts)

    def segments(self):
        return list(zip(self.points, self.points[1:]))


@dataclass(frozen=True)
class SurfaceCurve:
    pieces: tuple
    start: SurfacePoint | None = field(default=None, compare=False)

    @classmethod
    def from_segments(cls, tri, segments, start=None) -> "SurfaceCurve":
        """Build from ``(face, p, q)`` segments, merging runs on one face."""
        pieces = []
        for face, p, q in segments:
            if max(abs(a - b) for a, b in zip(p, q)) == 0.0:
                continue
            if pieces and pieces[-1][0] == face and pieces[-1][1][-1] == tuple(p):
                pieces[-1][1].append(tuple(q))
            else:
                pieces.append((face, [tuple(p), tuple(q)]))
        curve = cls(tuple(FaceCurve(f, tuple(pts)) for f, pts in pieces), start)
        curve.check_continuity(tri)
        return curve

    def check_continuity(self, tri) -> None:
        for a, b in zip(self.pieces, self.pieces[1:]):
            end = make_point(tri, a.face, a.points[-1])
            begin = make_point(tri, b.face, b.points[0])
            if not end.same_point(begin):
                raise ValueError(f"curve breaks between {end} and {begin}")


def face_curve_length(curve: FaceCurve, lengths: EdgeLengths) -> float:
    pl = lengths.placements[curve.face]
    return math.fsum(math.dist(pl.point(p), pl.point(q)) for p, q in curve.segments())


def curve_length(curve: SurfaceCurve, lengths: EdgeLengths) -> float:
    return math.fsum(face_curve_length(c, lengths) for c in curve.pieces)


@dataclass
class LengthReport:
    face_length: float
    partition_sums: list
    converged: bool
    depth: int

    @property
    def length(self) -> float:
        return self.partition_sums[-1]

    @property
    def gap(self) -> float:
        return self.face_length - self.length

    def to_json(self) -> dict:
        return {
            "face_length": self.face_length,
            "partition_sums": self.partition_sums,
            "converged": self.converged,
            "depth": self.depth,
            "gap": self.gap,
        }


class _Sampler:
    """Caches surface points, radii and distances along one curve."""

    def __init__(self, engine):
        self.engine = engine
        self.points = {}
        self.radii = {}
        self.dists = {}

    def point(self, face, b) -> SurfacePoint:
        key = (face, b)
        if key not in self.points:
            self.points[key] = make_point(self.engine.tri, face, b)
        return self.points[key]

    def radius(self, face, b) -> float:
        key = (face, b)
        if key not in self.radii:
            self.radii[key] = combined_radius(self.engine.lengths, self.point(face, b))
        return self.radii[key]

    def dist(self, face, p, q) -> float:
        key = (face, p, q)
        if key not in self.dists:
            self.dists[key] = self.engine.distance_exact(self.point(face, p), self.point(face, q))
        return self.dists[key]


def _midpoint(p, q):
    return tuple(0.5 * (a + b) for a, b in zip(p, q))


def surface_curve_length(curve, engine, depth: int = DEPTH_MAX) -> LengthReport:
    """Partition sums of the surface distance along ``curve``.

    Level 0 uses the curve's own breakpoints.  Each further level bisects
    every interval not yet certified, an interval being certified once its
    chord is below half the combined radius of one of its endpoints.
    """
    if isinstance(curve, FaceCurve):
        curve = SurfaceCurve((curve,))
    lengths = engine.lengths
    face_len = curve_length(curve, lengths)
    s = _Sampler(engine)
    open_iv, closed_sum = [], []
    for piece in curve.pieces:
        open_iv += [(piece.face, p, q) for p, q in piece.segments()]
    sums = []
    level = 0
    while True:
        pending = []
        for face, p, q in open_iv:
            chord = math.dist(lengths.placements[face].point(p), lengths.placements[face].point(q))
            if chord < 0.5 * max(s.radius(face, p), s.radius(face, q)):
                closed_sum.append(s.dist(face, p, q))
            else:
                pending.append((face, p, q))
        total = math.fsum(closed_sum) + math.fsum(s.dist(f, p, q) for f, p, q in pending)
        sums.append(total)
        if not pending or level >= depth:
            return LengthReport(face_len, sums, not pending, level)
        open_iv = []
        for face, p, q in pending:
            m = _midpoint(p, q)
            open_iv += [(face, p, m), (face, m, q)]
        level += 1


def check_length_preservation(curve: FaceCurve, engine, tol: float = 1e-6):
    """Compare face length and surface length of ``curve``.

    Returns ``(passed, report)``; raises :class:`ConvergenceNotReached` when
    the partition never certifies within the depth cap.
    """
    report = surface_curve_length(curve, engine, DEPTH_MAX)
    if not report.converged:
        raise ConvergenceNotReached(report.depth)
    return abs(report.face_length - report.length) <= tol, report


def parse_curve(text: str) -> SurfaceCurve:
    """Lines ``seg <face> <b1>,<b2>,<b3> <b1>,<b2>,<b3> ...``."""
    pieces = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] != "seg" or len(toks) < 4:
            raise ValueError(f"line {lineno}: expected 'seg <face> <point> <point> ...'")
        try:
            face = int(toks[1])
            pts = tuple(tuple(float(v) for v in t.split(",")) for t in toks[2:])
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {raw.strip()!r}") from None
        pieces.append(FaceCurve(face, pts))
    return SurfaceCurve(tuple(pieces))
