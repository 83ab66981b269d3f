"""Edge lengths as coordinates on the space of flat metrics.

A triangulation with ``|E|`` edges gives a chart of dimension
``3|V| - 3chi``.  Cone angles and area are isometry invariants, so
differing invariants prove two length vectors give different metrics.
Equal invariants prove nothing.
"""

import math

from conemetric import fixtures
from conemetric.flat import check_lengths
from conemetric.teich import chart_dimension, distinguish, invariants

tri, square = fixtures.load("torus")
print("torus chart dimension:", chart_dimension(tri))

other_diagonal = check_lengths(tri, {(1, 1): 1.0, (1, 2): math.sqrt(2), (1, 3): 1.0})
hexagonal = check_lengths(tri, {(1, 1): 1.0, (1, 2): 1.0, (1, 3): 1.0})

for name, l in (("square", square), ("other diagonal", other_diagonal), ("hexagonal", hexagonal)):
    rec = invariants(l)
    print(f"{name:15s} area={rec.area:.6f} angles={[round(a, 6) for a in rec.cone_angles]}")

print("square vs other diagonal:", distinguish(square, other_diagonal))
print("square vs hexagonal:     ", distinguish(square, hexagonal))
print("square vs scaled square: ", distinguish(square, square.scaled(2.0)))
