import itertools
import math
import random

import numpy as np
import pytest

from conemetric import fixtures
from conemetric.curves import curve_length
from conemetric.errors import StripDepthExceeded
from conemetric.flat import check_lengths, make_point
from conemetric.geodesic import DistanceEngine, build_engine
from conemetric.gluing import Corner, parse_spec, validate
from conemetric.properties import Context, pair, random_lengths, random_point

from conftest import random_triangulation
from oracles import brute_distance, brute_vertex_free

# a side of each face folded onto another side of the same face
CONE = "faces 2\nglue 1.2 1.3 flip\nglue 2.2 2.3 flip\nglue 1.1 2.1 flip"


@pytest.fixture(scope="module")
def engines():
    return {name: DistanceEngine(fixtures.load(name)[1]) for name in fixtures.NAMES}


@pytest.mark.parametrize("name", ["tetrahedron", "pillow"])
def test_unit_vertex_pairs(engines, name):
    e = engines[name]
    for u, v in itertools.combinations(e.vertices, 2):
        assert e.distance_exact(u, v) == pytest.approx(1.0, abs=1e-9)
        assert brute_distance(e.lengths, u, v) == pytest.approx(1.0, abs=1e-9)


def test_torus_vertex_to_itself_and_loop(engines):
    e = engines["torus"]
    v = e.vertices[0]
    assert e.distance_exact(v, v) == 0.0
    # a side midpoint is half an edge from the vertex
    m = make_point(e.tri, 1, (0.0, 0.5, 0.5))
    assert e.distance_exact(v, m) == pytest.approx(0.5, abs=1e-12)


def test_tetrahedron_opposite_edge_midpoints(engines):
    e = engines["tetrahedron"]
    # side 1.3 joins classes of 1.1 and 1.2; side 2.3 joins the other two
    a = make_point(e.tri, 1, (0.5, 0.5, 0.0))
    b = make_point(e.tri, 2, (0.5, 0.5, 0.0))
    classes = {e.tri.vertex_of[c] for c in (Corner(1, 1), Corner(1, 2), Corner(2, 1), Corner(2, 2))}
    assert len(classes) == 4
    # unfolding two faces into a unit rhombus joins the midpoints by a unit segment
    assert e.distance_exact(a, b) == pytest.approx(1.0, abs=1e-9)
    assert brute_distance(e.lengths, a, b) == pytest.approx(1.0, abs=1e-9)
    assert e.distance_approx(a, b, 64) == pytest.approx(1.0, abs=1e-3)


def test_pillow_centroids(engines):
    e = engines["pillow"]
    a = make_point(e.tri, 1, (1 / 3, 1 / 3, 1 / 3))
    b = make_point(e.tri, 2, (1 / 3, 1 / 3, 1 / 3))
    # reflected across any side: twice the inradius
    assert e.distance_exact(a, b) == pytest.approx(2 * math.sqrt(3) / 6, abs=1e-12)


def _compare_with_oracle(l, rng, trials, exact=True):
    e = DistanceEngine(l)
    ctx = Context("x", l)
    for _ in range(trials):
        x, y = pair(ctx, rng)
        d = e.distance_exact(x, y)
        b = brute_distance(l, x, y)
        assert d <= b + 1e-9
        if exact:
            assert d == pytest.approx(b, abs=1e-9)


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_matches_oracle_on_fixtures(name):
    _, l = fixtures.load(name)
    _compare_with_oracle(l, random.Random(name), 30)


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_matches_oracle_on_random_lengths(name):
    rng = random.Random(f"len:{name}")
    tri, _ = fixtures.load(name)
    for _ in range(3):
        _compare_with_oracle(random_lengths(tri, rng), rng, 10)


def test_matches_oracle_on_self_glued_faces():
    tri = validate(parse_spec(CONE))
    rng = random.Random(2)
    for _ in range(3):
        _compare_with_oracle(random_lengths(tri, rng), rng, 10)


def test_never_exceeds_oracle_on_random_gluings():
    rng = random.Random(9)
    for _ in range(6):
        tri = random_triangulation(rng, 6)
        _compare_with_oracle(random_lengths(tri, rng), rng, 5, exact=False)


# genus 2 with two vertices, one of cone angle well above 2pi
GENUS_TWO = """faces 8
glue 1.1 5.3 keep
glue 1.2 5.2 keep
glue 1.3 2.2 flip
glue 2.1 8.1 flip
glue 2.3 3.1 flip
glue 3.2 4.2 keep
glue 3.3 6.2 flip
glue 4.1 7.2 flip
glue 4.3 6.3 keep
glue 5.1 6.1 flip
glue 7.1 8.3 flip
glue 7.3 8.2 flip
"""


def test_matches_oracle_on_negative_euler_characteristic():
    tri = validate(parse_spec(GENUS_TWO))
    assert tri.summary()["chi"] == -2
    rng = random.Random(0)
    _compare_with_oracle(random_lengths(tri, rng), rng, 10)


def test_vertex_free_distance(engines):
    e = engines["tetrahedron"]
    u, v = e.vertices[:2]
    assert e.vertex_free_distance(u, v) == pytest.approx(1.0, abs=1e-12)
    assert e.vertex_free_distance(u, v, upper_bound=0.0) is None
    x = make_point(e.tri, 1, (0.2, 0.3, 0.5))
    y = make_point(e.tri, 3, (0.6, 0.3, 0.1))
    assert e.vertex_free_distance(x, y) == pytest.approx(brute_vertex_free(e.lengths, x, y), abs=1e-12)


def test_fast_path_agrees_with_full_query(engines):
    rng = random.Random(4)
    for e in engines.values():
        ctx = Context("x", e.lengths)
        for _ in range(50):
            x, y = pair(ctx, rng, near_prob=0.9)
            assert e.distance_exact(x, y) == pytest.approx(e.distance_exact(x, y, fast_path=False), abs=1e-12)


def test_symmetry_is_exact(engines):
    rng = random.Random(8)
    for e in engines.values():
        for _ in range(30):
            x, y = random_point(e.tri, rng), random_point(e.tri, rng)
            assert e.distance_exact(x, y) == e.distance_exact(y, x)


def test_any_rep_names_the_same_point(engines):
    e = engines["torus"]
    v = e.vertices[0]
    y = make_point(e.tri, 2, (0.1, 0.2, 0.7))
    d = e.distance_exact(v, y)
    for f, b in v.reps:
        assert e.distance_exact(make_point(e.tri, f, b), y) == d


def test_approximation_is_nested_upper_bound(engines):
    rng = random.Random(1)
    for e in engines.values():
        for _ in range(20):
            x, y = random_point(e.tri, rng), random_point(e.tri, rng)
            d = e.distance_exact(x, y)
            prev = math.inf
            for k in (1, 2, 4, 8, 16, 32, 64):
                a = e.distance_approx(x, y, k)
                assert d - 1e-9 <= a <= prev + 1e-12
                prev = a
            assert prev - d < 0.05


def test_geodesic_witness(engines):
    rng = random.Random(6)
    for e in engines.values():
        for _ in range(20):
            x, y = random_point(e.tri, rng), random_point(e.tri, rng)
            curve = e.realize_geodesic(x, y)
            assert curve_length(curve, e.lengths) == pytest.approx(e.distance_exact(x, y), abs=1e-9)
            if curve.pieces:
                first = curve.pieces[0]
                assert make_point(e.tri, first.face, first.points[0]).same_point(x)


def test_witness_through_a_vertex(engines):
    # on the pillow two points near one vertex but on opposite faces
    e = engines["pillow"]
    x = make_point(e.tri, 1, (0.9, 0.05, 0.05))
    y = make_point(e.tri, 2, (0.9, 0.05, 0.05))
    d, segs = e.geodesic_segments(x, y)
    assert d == pytest.approx(brute_distance(e.lengths, x, y), abs=1e-12)
    assert len(segs) >= 2


def test_vertex_distances_matrix(engines):
    d = engines["tetrahedron"].vertex_distances()
    assert d.shape == (4, 4)
    assert d.diagonal().tolist() == [0.0] * 4
    assert d[~np.eye(4, dtype=bool)] == pytest.approx(1.0, abs=1e-12)


def test_scaling_law(engines):
    e = engines["tetrahedron"]
    x = make_point(e.tri, 1, (0.2, 0.3, 0.5))
    y = make_point(e.tri, 4, (0.1, 0.1, 0.8))
    d = e.distance_exact(x, y)
    for c in (0.5, 2.0, 10.0):
        assert build_engine(e.lengths.scaled(c)).distance_exact(x, y) == pytest.approx(c * d, rel=1e-12)


def test_depth_cap_covers_obtuse_pillow():
    tri, _ = fixtures.load("pillow")
    l = check_lengths(tri, {(1, 1): 0.854, (1, 2): 1.3297, (1, 3): 0.6114})
    e = DistanceEngine(l)
    assert e._depth_cap(2.0) > 4 * tri.face_count
    rng = random.Random(0)
    for _ in range(10):
        x, y = random_point(tri, rng), random_point(tri, rng)
        assert e.distance_exact(x, y) == pytest.approx(brute_distance(l, x, y, max_depth=8), abs=1e-9)


def test_negative_refinement_rejected(engines):
    with pytest.raises(ValueError):
        DistanceEngine(engines["pillow"].lengths, k=-1)


def test_depth_cap_raises(engines):
    e = DistanceEngine(engines["tetrahedron"].lengths)
    e._depth_cap = lambda length: 0
    x = make_point(e.tri, 1, (0.5, 0.5, 0.0))
    y = make_point(e.tri, 2, (0.5, 0.5, 0.0))
    with pytest.raises(StripDepthExceeded):
        e.distance_exact(x, y)
