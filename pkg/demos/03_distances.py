"""Exact geodesic distances and the paths that realize them.

On the regular unit tetrahedron, the midpoints of two opposite edges are
at distance 1: unfold the two triangles between them into a rhombus and
the shortest path becomes one straight unit segment.
"""

from conemetric import DistanceEngine, fixtures, make_point
from conemetric.curves import curve_length

tri, l = fixtures.load("tetrahedron")
engine = DistanceEngine(l)

a = make_point(tri, 1, (0.5, 0.5, 0.0))
b = make_point(tri, 2, (0.5, 0.5, 0.0))
d, segments = engine.geodesic_segments(a, b)
print(f"opposite edge midpoints: d = {d:.12f}")
for face, p, q in segments:
    print(f"  face {face}: {tuple(round(v, 4) for v in p)} -> {tuple(round(v, 4) for v in q)}")

# The path is a real curve whose length equals the distance.
print(f"length of the realized path: {curve_length(engine.realize_geodesic(a, b), l):.12f}")

# The Steiner graph gives upper bounds that tighten as the edges are subdivided.
x = make_point(tri, 1, (0.2, 0.3, 0.5))
y = make_point(tri, 4, (0.6, 0.3, 0.1))
print(f"generic pair: exact {engine.distance_exact(x, y):.6f}")
for k in (4, 8, 16, 32, 64):
    print(f"  k={k:2d}: approx {engine.distance_approx(x, y, k):.6f}")

# Vertices: every pair of tetrahedron vertices is one edge apart.
print(engine.vertex_distances())
