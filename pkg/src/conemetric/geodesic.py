"""Geodesic distance on a glued flat surface.

Exact distances come from two ingredients:

* a best-first search over *strip unfoldings*: the faces crossed by a
  straight segment are laid out in one plane, and the set of directions from
  the source that still pass through every crossed side is tracked as a
  window on the last side.  This finds shortest paths whose interior avoids
  the vertices.
* a small graph on ``{x, y}`` plus the vertices, weighted by those
  vertex-free distances.  A shortest path that touches vertices splits into
  vertex-free pieces between consecutive vertices, so Dijkstra on this
  graph gives the distance.

Chains of face chords of any length are covered because a shortest path
crosses finitely many open edges between consecutive vertex contacts, and
every piece is bounded by an upper bound taken from the Steiner graph.

The approximate distance is the shortest path in a graph whose nodes are
the vertices and ``k - 1`` equally spaced points on every edge, arcs joining
nodes on a common face.  Subdivisions are nested when ``k`` doubles.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import StripDepthExceeded
from .flat import (
    EdgeLengths,
    SurfacePoint,
    bary_on_side,
    safety_radius,
    shared_quasi_distance,
    snap,
    vertex_point,
)
from .gluing import SideRef, side_end, side_start

DEFAULT_K = 16
# relative slack on upper bounds so ties with the Steiner bound survive pruning
BOUND_SLACK = 1e-9
MIN_WINDOW = 1e-13


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _seg_dist(p, a, b):
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / (dx * dx + dy * dy)
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.hypot(p[0] - ax - t * dx, p[1] - ay - t * dy)


class StripUnfolding:
    """One face of a planar development, reached through a window.

    ``corners`` are the images of the face's three corners in the plane of
    the source face; ``window`` is the part of the entry side seen from the
    source through all previously crossed sides.
    """

    __slots__ = ("face", "corners", "entry", "via", "window", "parent", "depth", "sides")

    def __init__(self, face, corners, entry, via, window, parent, depth, sides):
        self.face = face
        self.corners = corners
        self.entry = entry
        self.via = via  # exit side of the parent face
        self.window = window
        self.parent = parent
        self.depth = depth
        self.sides = sides

    def chain(self):
        out = []
        s = self
        while s is not None:
            out.append(s)
            s = s.parent
        return out[::-1]


@dataclass
class Hop:
    """A vertex-free shortest path found by the strip search."""

    length: float
    segments: list  # [(face, start bary, end bary), ...]

    def reversed(self) -> "Hop":
        return Hop(self.length, [(f, q, p) for f, p, q in reversed(self.segments)])


class _SteinerGraph:
    def __init__(self, engine: "DistanceEngine", k: int):
        tri = engine.tri
        self.k = k
        node_reps = []  # node -> list of (face, bary)
        for v in engine.vertices:
            node_reps.append(list(v.reps))
        self.vertex_nodes = list(range(len(engine.vertices)))
        for e in tri.edge_ids:
            other, flipped = tri.side_partner[e]
            for j in range(1, k):
                t = j / k
                node_reps.append([
                    (e.face, bary_on_side(e.side, t)),
                    (other.face, bary_on_side(other.side, 1.0 - t if flipped else t)),
                ])
        n = len(node_reps)
        self.size = n
        per_face: dict[int, tuple[list, list]] = {f: ([], []) for f in tri.faces}
        for node, reps in enumerate(node_reps):
            for f, b in reps:
                per_face[f][0].append(node)
                per_face[f][1].append(engine.placements[f].point(b))
        self.face_nodes = {}
        w = np.full((n, n), np.inf)
        for f, (idx, pts) in per_face.items():
            idx = np.asarray(idx)
            pts = np.asarray(pts, dtype=float)
            self.face_nodes[f] = (idx, pts)
            d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
            rows, cols = np.meshgrid(idx, idx, indexing="ij")
            np.minimum.at(w, (rows.ravel(), cols.ravel()), d.ravel())
        np.fill_diagonal(w, 0.0)
        w[~np.isfinite(w)] = 0.0  # dense csgraph input: 0 means no arc
        self.dist = shortest_path(w, method="D", directed=False)

    def point_row(self, engine, x: SurfacePoint) -> np.ndarray:
        """Graph distance from ``x`` to every node."""
        first = np.full(self.size, np.inf)
        for f, b in x.reps:
            idx, pts = self.face_nodes[f]
            p = np.asarray(engine.placements[f].point(b))
            np.minimum.at(first, idx, np.linalg.norm(pts - p, axis=1))
        hit = np.flatnonzero(np.isfinite(first))
        return (first[hit, None] + self.dist[hit]).min(axis=0)


class DistanceEngine:
    """Distance queries on a glued surface; immutable apart from caches."""

    def __init__(self, lengths: EdgeLengths, k: int = DEFAULT_K):
        if k < 0:
            raise ValueError("refinement parameter must be non-negative")
        self.lengths = lengths
        self.tri = lengths.triangulation
        self.k = k
        self.placements = lengths.placements
        self.vertices = [vertex_point(self.tri, v) for v in self.tri.vertex_ids]
        self.depth_max = 4 * self.tri.face_count
        self._graphs: dict[int, _SteinerGraph] = {}
        self._vv: dict[tuple[int, int], Hop] | None = None
        # position of each opposite corner relative to its directed side
        self._apex = {}
        for f in self.tri.faces:
            pl = self.placements[f]
            for m in (1, 2, 3):
                p = pl.corners[side_start(m) - 1]
                q = pl.corners[side_end(m) - 1]
                c = pl.corners[m - 1]
                ex, ey = q[0] - p[0], q[1] - p[1]
                ll = ex * ex + ey * ey
                cx, cy = c[0] - p[0], c[1] - p[1]
                self._apex[f, m] = ((cx * ex + cy * ey) / ll, abs(_cross(ex, ey, cx, cy)) / ll)
        self._min_angle, self._min_gap = self._crossing_constants()

    # ------------------------------------------------------------ helpers

    def point(self, face: int, bary) -> SurfacePoint:
        from .flat import make_point

        return make_point(self.tri, face, bary)

    def graph(self, k: int) -> _SteinerGraph:
        if k not in self._graphs:
            self._graphs[k] = _SteinerGraph(self, max(k, 1))
        return self._graphs[k]

    def _unfold(self, corners, side):
        """Lay the face across ``side`` next to a face with image ``corners``."""
        other, flipped = self.tri.side_partner[side]
        k = side.side
        a = corners[side_start(k) - 1]
        b = corners[side_end(k) - 1]
        m = other.side
        p, q = (b, a) if flipped else (a, b)
        alpha, beta = self._apex[other.face, m]
        ex, ey = q[0] - p[0], q[1] - p[1]
        opp = corners[k - 1]
        s = -1.0 if _cross(ex, ey, opp[0] - p[0], opp[1] - p[1]) > 0 else 1.0
        apex = (p[0] + alpha * ex - s * beta * ey, p[1] + alpha * ey + s * beta * ex)
        img = [None, None, None]
        img[side_start(m) - 1] = p
        img[side_end(m) - 1] = q
        img[m - 1] = apex
        return other.face, m, tuple(img)

    def _crossing_constants(self):
        """Smallest corner angle, and smallest gap between the two sides that
        flank a shared edge from opposite ends in a two-face unfolding."""
        angle = math.inf
        gap = math.inf
        for f in self.tri.faces:
            corners = self.placements[f].corners
            for m in (1, 2, 3):
                a = corners[side_start(m) - 1]
                b = corners[side_end(m) - 1]
                c = corners[m - 1]
                angle = min(angle, math.atan2(abs(_cross(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1])),
                                              (b[0] - a[0]) * (c[0] - a[0]) + (b[1] - a[1]) * (c[1] - a[1])))
                _, n, img = self._unfold(corners, SideRef(f, m))
                apex = img[n - 1]
                for w, w2 in ((a, b), (b, a)):
                    gap = min(gap, _seg_dist(w, w2, apex), _seg_dist(c, w2, apex),
                              _seg_dist(w2, w, c), _seg_dist(apex, w, c))
        return angle, gap

    def _depth_cap(self, length: float) -> int:
        """Most sides a vertex-free segment of the given length can cross.

        Consecutive crossed sides share a vertex.  While they keep sharing
        the same one they fan around it, and a straight line sweeps less than
        a half turn, so a run holds at most ``ceil(pi / min_angle)`` sides.
        Changing the pivot vertex passes between two sides that flank an
        edge from opposite ends, which costs at least ``min_gap``; every
        other such change uses a disjoint piece of the segment.
        """
        if not math.isfinite(length):
            return self.depth_max
        pivots = 2.0 * length / self._min_gap + 1.0
        fan = math.ceil(math.pi / self._min_angle)
        return max(self.depth_max, int((pivots + 1.0) * fan) + 1)

    # -------------------------------------------------------- strip search

    def _search(self, source: SurfacePoint, targets, bounds):
        """Vertex-free shortest paths from ``source`` to each target.

        Returns a list with a :class:`Hop` or ``None`` per target; ``None``
        means no vertex-free path of length at most the target's bound.
        """
        nt = len(targets)
        best = [math.inf] * nt
        found = [None] * nt
        target_reps = {}
        for t, y in enumerate(targets):
            for f, b in y.reps:
                target_reps.setdefault(f, []).append((t, b))

        def limit():
            return max(min(bounds[t], best[t]) for t in range(nt))

        def offer(t, d, witness):
            if d <= bounds[t] and d < best[t]:
                best[t] = d
                found[t] = witness

        heap = []
        counter = itertools.count()
        for f0, b0 in source.reps:
            corners = self.placements[f0].corners
            s = self.placements[f0].point(b0)
            for t, q in target_reps.get(f0, ()):
                qx, qy = self.placements[f0].point(q)
                offer(t, math.hypot(qx - s[0], qy - s[1]), (f0, b0, s, None, q))
            for k in (1, 2, 3):
                if b0[k - 1] == 0.0:
                    continue
                side = SideRef(f0, k)
                w = (corners[side_start(k) - 1], corners[side_end(k) - 1])
                g, m, img = self._unfold(corners, side)
                st = StripUnfolding(g, img, m, k, w, None, 1, (tuple(side),))
                st_root = (f0, b0, s)
                lb = _seg_dist(s, *w)
                heapq.heappush(heap, (lb, 1, st.sides, next(counter), st, st_root))

        while heap:
            lb, depth, _, _, st, root = heapq.heappop(heap)
            lim = limit()
            if lb > lim:
                break
            f0, b0, s = root
            sx, sy = s
            (w0x, w0y), (w1x, w1y) = st.window
            u0x, u0y = w0x - sx, w0y - sy
            u1x, u1y = w1x - sx, w1y - sy
            sigma = _cross(u0x, u0y, u1x, u1y)
            scale = math.hypot(u0x, u0y) * math.hypot(u1x, u1y)
            if abs(sigma) <= 1e-15 * scale:
                continue
            sg = 1.0 if sigma > 0 else -1.0
            for t, q in target_reps.get(st.face, ()):
                c1, c2, c3 = st.corners
                qx = q[0] * c1[0] + q[1] * c2[0] + q[2] * c3[0] - sx
                qy = q[0] * c1[1] + q[1] * c2[1] + q[2] * c3[1] - sy
                tol = 1e-12 * math.hypot(qx, qy) * (math.hypot(u0x, u0y) + math.hypot(u1x, u1y))
                if sg * _cross(u0x, u0y, qx, qy) >= -tol and sg * _cross(qx, qy, u1x, u1y) >= -tol:
                    offer(t, math.hypot(qx, qy), (f0, b0, s, st, q))
            lim = limit()
            for k in (1, 2, 3):
                if k == st.entry:
                    continue
                a = st.corners[side_start(k) - 1]
                b = st.corners[side_end(k) - 1]
                ax, ay = a[0] - sx, a[1] - sy
                ex, ey = b[0] - a[0], b[1] - a[1]
                lo, hi = 0.0, 1.0
                for c0, d0 in (
                    (sg * _cross(u0x, u0y, ax, ay), sg * _cross(u0x, u0y, ex, ey)),
                    (sg * _cross(ax, ay, u1x, u1y), sg * _cross(ex, ey, u1x, u1y)),
                ):
                    if d0 > 0:
                        lo = max(lo, -c0 / d0)
                    elif d0 < 0:
                        hi = min(hi, -c0 / d0)
                    elif c0 < 0:
                        hi = -1.0
                if hi - lo <= MIN_WINDOW:
                    continue
                w = ((a[0] + lo * ex, a[1] + lo * ey), (a[0] + hi * ex, a[1] + hi * ey))
                clb = _seg_dist(s, *w)
                if clb > lim:
                    continue
                if depth + 1 > self._depth_cap(lim):
                    raise StripDepthExceeded(
                        f"strip search reached depth {depth} with a live window"
                    )
                side = SideRef(st.face, k)
                g, m, img = self._unfold(st.corners, side)
                child = StripUnfolding(g, img, m, k, w, st, depth + 1, st.sides + (tuple(side),))
                heapq.heappush(heap, (clb, depth + 1, child.sides, next(counter), child, root))

        return [
            None if found[t] is None else Hop(best[t], self._witness(*found[t]))
            for t in range(nt)
        ]

    def _witness(self, f0, b0, s, st, q):
        if st is None:
            return [(f0, b0, q)]
        chain = st.chain()
        last = chain[-1]
        c1, c2, c3 = last.corners
        qp = (
            q[0] * c1[0] + q[1] * c2[0] + q[2] * c3[0],
            q[0] * c1[1] + q[1] * c2[1] + q[2] * c3[1],
        )
        dx, dy = qp[0] - s[0], qp[1] - s[1]
        segs = []
        face, start = f0, b0
        for node in chain:
            p = node.corners[side_start(node.entry) - 1]
            r = node.corners[side_end(node.entry) - 1]
            ex, ey = r[0] - p[0], r[1] - p[1]
            den = _cross(ex, ey, dx, dy)
            u = _cross(s[0] - p[0], s[1] - p[1], dx, dy) / den if den else 0.0
            u = min(1.0, max(0.0, u))
            _, flipped = self.tri.side_partner[SideRef(face, node.via)]
            exit_b = snap(bary_on_side(node.via, 1.0 - u if flipped else u))
            segs.append((face, start, exit_b))
            face, start = node.face, snap(bary_on_side(node.entry, u))
        segs.append((face, start, q))
        return segs

    def vertex_free_distance(self, a: SurfacePoint, b: SurfacePoint, upper_bound=math.inf):
        """Shortest vertex-avoiding geodesic length, or ``None`` beyond ``upper_bound``."""
        hop = self._search(a, [b], [upper_bound])[0]
        return None if hop is None else hop.length

    # --------------------------------------------------------- vertex table

    def _vertex_table(self):
        if self._vv is None:
            g = self.graph(self.k)
            table = {}
            nv = len(self.vertices)
            for i, v in enumerate(self.vertices):
                bounds = [g.dist[i, j] * (1 + BOUND_SLACK) + 1e-12 for j in range(nv)]
                for j, hop in enumerate(self._search(v, self.vertices, bounds)):
                    if hop is not None and i != j:
                        table[i, j] = hop
            for i, j in list(table):
                if (j, i) not in table or table[j, i].length > table[i, j].length:
                    table[j, i] = table[i, j].reversed()
            self._vv = table
        return self._vv

    def vertex_distances(self) -> np.ndarray:
        """Exact vertex-to-vertex distances."""
        nv = len(self.vertices)
        d = np.array([[self.distance_exact(u, v) for v in self.vertices] for u in self.vertices])
        return d.reshape(nv, nv)

    # -------------------------------------------------------------- queries

    def distance_approx(self, x: SurfacePoint, y: SurfacePoint, k: int | None = None) -> float:
        """Steiner-graph upper bound on the distance."""
        if x.same_point(y):
            return 0.0
        g = self.graph(self.k if k is None else k)
        direct, _ = shared_quasi_distance(self.lengths, x, y)
        rx = g.point_row(self, x)
        best = direct
        for f, b in y.reps:
            idx, pts = g.face_nodes[f]
            p = np.asarray(self.placements[f].point(b))
            best = min(best, float((rx[idx] + np.linalg.norm(pts - p, axis=1)).min()))
        return best

    def _query(self, x: SurfacePoint, y: SurfacePoint, fast_path: bool):
        if x.same_point(y):
            return 0.0, []
        d_face, face = shared_quasi_distance(self.lengths, x, y)
        if fast_path and d_face < max(safety_radius(self.lengths, x), safety_radius(self.lengths, y)):
            return d_face, [self._chord(face, x, y)]
        if str(y) < str(x):
            d, segs = self._query(y, x, fast_path)
            return d, [(f, q, p) for f, p, q in reversed(segs)]

        g = self.graph(self.k)
        rx, ry = g.point_row(self, x), g.point_row(self, y)
        upper = self.distance_approx(x, y)
        upper = upper * (1 + BOUND_SLACK) + 1e-12
        nv = len(self.vertices)
        vx = [min(upper, rx[i] * (1 + BOUND_SLACK) + 1e-12) for i in range(nv)]
        vy = [min(upper, ry[i] * (1 + BOUND_SLACK) + 1e-12) for i in range(nv)]
        hx = self._search(x, [y] + self.vertices, [upper] + vx)
        hy = self._search(y, self.vertices, vy)

        # nodes: 0 = x, 1 = y, 2 + i = vertex i
        edges: dict[int, list] = {n: [] for n in range(nv + 2)}

        def link(a, b, hop):
            edges[a].append((b, hop))
            edges[b].append((a, hop.reversed()))

        if hx[0] is not None:
            link(0, 1, hx[0])
        for i in range(nv):
            if hx[i + 1] is not None:
                link(0, 2 + i, hx[i + 1])
            if hy[i] is not None:
                link(2 + i, 1, hy[i].reversed())
        for (i, j), hop in self._vertex_table().items():
            if i < j:
                link(2 + i, 2 + j, hop)

        dist = {0: 0.0}
        prev = {}
        heap = [(0.0, 0)]
        done = set()
        while heap:
            d, n = heapq.heappop(heap)
            if n in done:
                continue
            done.add(n)
            if n == 1:
                break
            for m, hop in edges[n]:
                nd = d + hop.length
                if nd < dist.get(m, math.inf):
                    dist[m] = nd
                    prev[m] = (n, hop)
                    heapq.heappush(heap, (nd, m))
        if 1 not in dist:
            # unreachable within the Steiner bound; cannot happen for a valid bound
            raise RuntimeError("no path found below the Steiner upper bound")
        segs = []
        n = 1
        while n != 0:
            n, hop = prev[n]
            segs = hop.segments + segs
        return dist[1], segs

    def _chord(self, face, x, y):
        pl = self.placements[face]
        best = None
        for p in x.reps_in(face):
            for q in y.reps_in(face):
                d = math.dist(pl.point(p), pl.point(q))
                if best is None or d < best[0]:
                    best = (d, p, q)
        return (face, best[1], best[2])

    def distance_exact(self, x: SurfacePoint, y: SurfacePoint, fast_path: bool = True) -> float:
        """Geodesic distance between two surface points.

        With ``fast_path`` a pair on a common face closer than the safety
        radius of either point is answered by the in-face distance.
        """
        return self._query(x, y, fast_path)[0]

    def geodesic_segments(self, x: SurfacePoint, y: SurfacePoint):
        """``(distance, [(face, start bary, end bary), ...])`` for a shortest path."""
        return self._query(x, y, True)

    def realize_geodesic(self, x: SurfacePoint, y: SurfacePoint):
        from .curves import SurfaceCurve

        d, segs = self._query(x, y, True)
        return SurfaceCurve.from_segments(self.tri, segs, start=x)


def build_engine(lengths: EdgeLengths, k: int = DEFAULT_K) -> DistanceEngine:
    return DistanceEngine(lengths, k)
