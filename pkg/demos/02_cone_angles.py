"""Cone angles, area and the Gauss-Bonnet constraint.

Edge lengths make every triangle Euclidean.  Summing corner angles around
each vertex gives its cone angle, and the curvatures ``2pi - theta`` always
add up to ``2pi chi``.
"""

import math
import random

from conemetric import fixtures
from conemetric.flat import cone_angles, gauss_bonnet_residual
from conemetric.properties import random_lengths

for name in fixtures.NAMES:
    tri, l = fixtures.load(name)
    rep = cone_angles(l)
    angles = ", ".join(f"{a / math.pi:.4f}pi" for a in rep.cone_angles.values())
    print(f"{name:12s} area={rep.area:.6f} cone angles: {angles}")

rng = random.Random(1)
tri, _ = fixtures.load("tetrahedron")
worst = max(abs(gauss_bonnet_residual(random_lengths(tri, rng))) for _ in range(1000))
print(f"\n1000 random tetrahedra: largest Gauss-Bonnet residual {worst:.1e}")
