"""Randomised checks of the structural properties of the glued metric.

Each property takes a :class:`Context` and a ``random.Random`` and returns
``None`` on success or a dict describing the counterexample.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .curves import FaceCurve, check_length_preservation, curve_length
from .flat import (
    EdgeLengths,
    check_lengths,
    combined_radius,
    cone_angles,
    gauss_bonnet_residual,
    make_point,
    quasi_distance,
    safety_radius,
)
from .geodesic import DistanceEngine

TOL = 1e-9


@dataclass
class Context:
    name: str
    lengths: EdgeLengths
    _engine: DistanceEngine | None = field(default=None, repr=False)

    @property
    def tri(self):
        return self.lengths.triangulation

    @property
    def engine(self) -> DistanceEngine:
        if self._engine is None:
            self._engine = DistanceEngine(self.lengths)
        return self._engine


# ---------------------------------------------------------------- sampling


def random_lengths(tri, rng: random.Random, lo=0.6, hi=1.4) -> EdgeLengths:
    """Uniform lengths in ``[lo, hi]`` conditioned on every triangle inequality."""
    while True:
        vals = {e: rng.uniform(lo, hi) for e in tri.edge_ids}
        ok = True
        for f in tri.faces:
            a, b, c = (vals[e] for e in tri.face_edges(f))
            if not (a + b > c and b + c > a and c + a > b):
                ok = False
                break
        if ok:
            return check_lengths(tri, vals)


def random_bary(rng: random.Random, boundary_prob=0.2, corner_prob=0.1):
    u = rng.random()
    if u < corner_prob:
        b = [0.0, 0.0, 0.0]
        b[rng.randrange(3)] = 1.0
        return tuple(b)
    b = [rng.random() for _ in range(3)]
    if u < corner_prob + boundary_prob:
        b[rng.randrange(3)] = 0.0
    s = sum(b)
    return tuple(v / s for v in b)


def random_point(tri, rng, **kw):
    return make_point(tri, rng.randrange(1, tri.face_count + 1), random_bary(rng, **kw))


def bary_of(placement, p):
    (x1, y1), (x2, y2), (x3, y3) = placement.corners
    det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
    b2 = ((p[0] - x1) * (y3 - y1) - (x3 - x1) * (p[1] - y1)) / det
    b3 = ((x2 - x1) * (p[1] - y1) - (p[0] - x1) * (y2 - y1)) / det
    return (1.0 - b2 - b3, b2, b3)


def nearby_point(ctx: Context, rng, face, x, radius, tries=200):
    """A point on ``face`` within ``radius`` of some rep of ``x`` there, or ``None``."""
    pl = ctx.lengths.placements[face]
    reps = x.reps_in(face)
    for _ in range(tries):
        px, py = pl.point(rng.choice(reps))
        rho = radius * math.sqrt(rng.random()) * 0.999
        phi = rng.uniform(0, 2 * math.pi)
        b = bary_of(pl, (px + rho * math.cos(phi), py + rho * math.sin(phi)))
        if min(b) < 0:
            continue
        if rng.random() < 0.3:
            b = list(b)
            b[rng.randrange(3)] = 0.0
            s = sum(b)
            if s == 0:
                continue
            b = [v / s for v in b]
        return make_point(ctx.tri, face, b)
    return None


def pair(ctx, rng, near_prob=0.5):
    """Two points, often close to each other."""
    x = random_point(ctx.tri, rng)
    if rng.random() < near_prob:
        face = rng.choice(sorted(x.faces()))
        y = nearby_point(ctx, rng, face, x, 2 * safety_radius(ctx.lengths, x))
        if y is not None:
            return x, y
    return x, random_point(ctx.tri, rng)


# -------------------------------------------------------------- properties


def prop_gauss_bonnet(ctx, rng):
    l = random_lengths(ctx.tri, rng)
    res = gauss_bonnet_residual(l)
    if abs(res) >= TOL:
        return {"lengths": l.as_side_dict(), "residual": res}
    rep = cone_angles(l)
    for f, angs in rep.corner_angles.items():
        if abs(math.fsum(angs) - math.pi) > TOL:
            return {"lengths": l.as_side_dict(), "face": f, "angle_sum": math.fsum(angs)}
    return None


def local_sample(ctx, rng, tries=1000):
    """``(x, z, face, d, r)`` with both points on ``face`` and ``d < r(x)``."""
    for _ in range(tries):
        x = random_point(ctx.tri, rng, boundary_prob=0.35, corner_prob=0.2)
        face = rng.choice(sorted(x.faces()))
        r = safety_radius(ctx.lengths, x)
        z = nearby_point(ctx, rng, face, x, r)
        if z is None:
            continue
        dz = quasi_distance(ctx.lengths, face, x, z)
        if dz < r:
            return x, z, face, dz, r
    raise RuntimeError("could not sample a close pair")


def prop_side_transfer(ctx, rng):
    """A short in-face distance is seen again from every face carrying ``z``."""
    x, z, face, dz, _ = local_sample(ctx, rng)
    for j, zb in z.reps:
        pl = ctx.lengths.placements[j]
        zp = pl.point(zb)
        if not any(abs(math.dist(pl.point(xb), zp) - dz) <= TOL for xb in x.reps_in(j)):
            return {"x": str(x), "z": str(z), "face": face, "other_face": j, "d": dz}
    return None


def prop_face_agreement(ctx, rng):
    x, z, face, dz, _ = local_sample(ctx, rng)
    for j in z.faces():
        if j not in x.faces():
            return {"x": str(x), "z": str(z), "face": face, "missing_face": j}
        dj = quasi_distance(ctx.lengths, j, x, z)
        if abs(dj - dz) > TOL:
            return {"x": str(x), "z": str(z), "face": face, "other_face": j, "di": dz, "dj": dj}
    # local triangle inequality of the face quasi-distance
    w = make_point(ctx.tri, face, random_bary(rng))
    lhs = dz + quasi_distance(ctx.lengths, face, z, w)
    if lhs < quasi_distance(ctx.lengths, face, x, w) - TOL:
        return {"x": str(x), "z": str(z), "w": str(w), "face": face}
    return None


def prop_locality(ctx, rng):
    x, y = pair(ctx, rng)
    d = ctx.engine.distance_exact(x, y, fast_path=False)
    r = safety_radius(ctx.lengths, x)
    if d < r:
        shared = [f for f in x.faces() & y.faces()
                  if abs(quasi_distance(ctx.lengths, f, x, y) - d) <= TOL]
        if not shared:
            return {"x": str(x), "y": str(y), "d": d, "r": r}
    if d < combined_radius(ctx.lengths, x) and not (x.faces() & y.faces()):
        return {"x": str(x), "y": str(y), "d": d, "ball": "escapes"}
    return None


def random_face_curve(tri, rng, npoints=5):
    face = rng.randrange(1, tri.face_count + 1)
    pts = []
    while len(pts) < npoints:
        b = random_bary(rng, boundary_prob=0.1, corner_prob=0.05)
        if not pts or pts[-1] != b:
            pts.append(b)
    return FaceCurve(face, tuple(pts))


def prop_length_preservation(ctx, rng, tol=1e-6):
    curve = random_face_curve(ctx.tri, rng)
    ok, report = check_length_preservation(curve, ctx.engine, tol)
    if not ok:
        return {"face": curve.face, "points": [list(p) for p in curve.points], **report.to_json()}
    return None


def prop_metric_axioms(ctx, rng):
    e = ctx.engine
    x, y, z = (random_point(ctx.tri, rng) for _ in range(3))
    dxy, dyx = e.distance_exact(x, y), e.distance_exact(y, x)
    if dxy != dyx:
        return {"x": str(x), "y": str(y), "dxy": dxy, "dyx": dyx}
    dxz, dyz = e.distance_exact(x, z), e.distance_exact(y, z)
    if dxz > dxy + dyz + TOL:
        return {"x": str(x), "y": str(y), "z": str(z), "excess": dxz - dxy - dyz}
    if (dxy == 0.0) != x.same_point(y):
        return {"x": str(x), "y": str(y), "d": dxy}
    # every representative names the same point
    f, b = x.reps[-1]
    if e.distance_exact(x, make_point(ctx.tri, f, b)) != 0.0:
        return {"x": str(x), "rep": [f, list(b)]}
    return None


def prop_approx_upper_bound(ctx, rng, ks=(4, 8, 16, 32, 64)):
    x, y = pair(ctx, rng, near_prob=0.2)
    d = ctx.engine.distance_exact(x, y)
    prev = math.inf
    for k in ks:
        a = ctx.engine.distance_approx(x, y, k)
        if a < d - TOL or a > prev + TOL:
            return {"x": str(x), "y": str(y), "k": k, "approx": a, "exact": d, "previous": prev}
        prev = a
    return None


def prop_homothety(ctx, rng, scales=(0.5, 2.0, 10.0)):
    x, y = pair(ctx, rng)
    d = ctx.engine.distance_exact(x, y)
    base = cone_angles(ctx.lengths)
    for c in scales:
        lc = ctx.lengths.scaled(c)
        dc = DistanceEngine(lc).distance_exact(x, y)
        if abs(dc - c * d) > TOL * max(c * d, 1e-300):
            return {"x": str(x), "y": str(y), "c": c, "d": d, "dc": dc}
        rep = cone_angles(lc)
        if abs(rep.area / base.area - c * c) > TOL * c * c:
            return {"c": c, "area_ratio": rep.area / base.area}
        for v, t in base.cone_angles.items():
            if abs(rep.cone_angles[v] - t) > 1e-12:
                return {"c": c, "vertex": str(v), "angle": t, "scaled_angle": rep.cone_angles[v]}
    return None


def prop_geodesic_witness(ctx, rng):
    x, y = pair(ctx, rng, near_prob=0.2)
    d = ctx.engine.distance_exact(x, y)
    curve = ctx.engine.realize_geodesic(x, y)
    length = curve_length(curve, ctx.lengths)
    if abs(length - d) > TOL:
        return {"x": str(x), "y": str(y), "d": d, "curve_length": length}
    if curve.pieces:
        first, last = curve.pieces[0], curve.pieces[-1]
        if not (make_point(ctx.tri, first.face, first.points[0]).same_point(x)
                and make_point(ctx.tri, last.face, last.points[-1]).same_point(y)):
            return {"x": str(x), "y": str(y), "endpoints": "mismatch"}
    return None


PROPERTIES = {
    "gauss_bonnet": prop_gauss_bonnet,
    "side_transfer": prop_side_transfer,
    "face_agreement": prop_face_agreement,
    "locality": prop_locality,
    "length_preservation": prop_length_preservation,
    "metric_axioms": prop_metric_axioms,
    "approx_upper_bound": prop_approx_upper_bound,
    "homothety": prop_homothety,
    "geodesic_witness": prop_geodesic_witness,
}


def run(contexts, trials: int, seed: int, names=None) -> dict:
    """Run every property ``trials`` times on every context.

    Each (property, context) pair gets its own generator seeded from
    ``seed``, so results do not depend on the order of execution.
    """
    names = list(PROPERTIES) if names is None else list(names)
    out = {}
    for name in names:
        prop = PROPERTIES[name]
        entry = {"trials": 0, "passed": 0, "failed": 0, "counterexample": None}
        for ctx in contexts:
            rng = random.Random(f"{seed}:{name}:{ctx.name}")
            for trial in range(trials):
                entry["trials"] += 1
                try:
                    bad = prop(ctx, rng)
                except Exception as exc:  # a crash is a counterexample too
                    bad = {"exception": f"{type(exc).__name__}: {exc}"}
                if bad is None:
                    entry["passed"] += 1
                else:
                    entry["failed"] += 1
                    if entry["counterexample"] is None:
                        entry["counterexample"] = {
                            "complex": ctx.name,
                            "trial": trial,
                            "lengths": ctx.lengths.as_side_dict(),
                            **bad,
                        }
        out[name] = entry
    return out
