"""Curves keep their length when pushed from a face into the surface.

The surface length of a curve is a supremum over partitions.  Bisecting
until every piece is short compared to the safety radius of an endpoint
makes each term an in-face chord, so the partition sum reaches the face
length exactly.
"""

from conemetric import DistanceEngine, FaceCurve, fixtures
from conemetric.curves import surface_curve_length

tri, l = fixtures.load("torus")
engine = DistanceEngine(l)

# Corner to corner along the diagonal: both ends are the single torus vertex,
# so the coarse partition sees a closed loop of length 0.
curve = FaceCurve(1, ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.2, 0.3, 0.5)))
rep = surface_curve_length(curve, engine)
print(f"face length {rep.face_length:.12f}")
for level, s in enumerate(rep.partition_sums):
    print(f"  level {level:2d}: partition sum {s:.12f}")
print(f"converged={rep.converged} at depth {rep.depth}, gap {rep.gap:.1e}")
