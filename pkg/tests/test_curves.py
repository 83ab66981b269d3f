import math
import random

import pytest

from conemetric import curves, fixtures
from conemetric.curves import (
    FaceCurve,
    SurfaceCurve,
    check_length_preservation,
    curve_length,
    face_curve_length,
    parse_curve,
    surface_curve_length,
)
from conemetric.errors import ConvergenceNotReached, InvalidBarycentric
from conemetric.geodesic import DistanceEngine
from conemetric.properties import random_face_curve, random_lengths


@pytest.fixture(scope="module")
def engines():
    return {name: DistanceEngine(fixtures.load(name)[1]) for name in fixtures.NAMES}


def test_face_curve_validation():
    with pytest.raises(InvalidBarycentric):
        FaceCurve(1, ((1, 0, 0),))
    with pytest.raises(InvalidBarycentric):
        FaceCurve(1, ((1, 0, 0), (1, 0, 0)))
    with pytest.raises(InvalidBarycentric):
        FaceCurve(1, ((1, 0, 0), (0.5, 0.6, 0)))


def test_face_length_of_triangle_boundary(engines):
    c = FaceCurve(1, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0)))
    assert face_curve_length(c, engines["tetrahedron"].lengths) == pytest.approx(3.0, abs=1e-12)
    assert face_curve_length(c, engines["torus"].lengths) == pytest.approx(2 + math.sqrt(2), abs=1e-12)


def test_boundary_loop_is_preserved(engines):
    c = FaceCurve(1, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0)))
    for e in engines.values():
        ok, rep = check_length_preservation(c, e)
        assert ok and rep.converged and rep.depth <= curves.DEPTH_MAX


def test_partition_sums_increase_to_face_length(engines):
    rng = random.Random(3)
    for e in engines.values():
        for _ in range(10):
            c = random_face_curve(e.tri, rng)
            rep = surface_curve_length(c, e)
            assert rep.converged
            assert all(a <= b + 1e-12 for a, b in zip(rep.partition_sums, rep.partition_sums[1:]))
            assert rep.length == pytest.approx(rep.face_length, abs=1e-9)
            assert rep.partition_sums[0] <= rep.face_length + 1e-12


def test_shortcut_is_visible_at_level_zero(engines):
    # on the torus the diagonal corner-to-corner hop is a closed loop of length 0 at the vertex
    e = engines["torus"]
    c = FaceCurve(1, ((1, 0, 0), (0, 1, 0)))
    rep = surface_curve_length(c, e)
    assert rep.partition_sums[0] == 0.0
    assert rep.length == pytest.approx(math.sqrt(2), abs=1e-9)


def test_depth_cap_reports_no_convergence(engines, monkeypatch):
    e = engines["pillow"]
    c = FaceCurve(1, ((1, 0, 0), (0, 1, 0)))
    rep = surface_curve_length(c, e, depth=0)
    assert not rep.converged and rep.depth == 0
    monkeypatch.setattr(curves, "DEPTH_MAX", 0)
    with pytest.raises(ConvergenceNotReached):
        check_length_preservation(c, e)


def test_random_lengths_preserved():
    rng = random.Random(12)
    for name in fixtures.NAMES:
        tri, _ = fixtures.load(name)
        e = DistanceEngine(random_lengths(tri, rng))
        for _ in range(5):
            ok, rep = check_length_preservation(random_face_curve(tri, rng), e)
            assert ok, rep.to_json()


def test_surface_curve_from_segments(engines):
    e = engines["pillow"]
    segs = [
        (1, (1 / 3, 1 / 3, 1 / 3), (0.0, 0.5, 0.5)),
        (2, (0.0, 0.5, 0.5), (1 / 3, 1 / 3, 1 / 3)),
        (2, (1 / 3, 1 / 3, 1 / 3), (1 / 3, 1 / 3, 1 / 3)),
    ]
    c = SurfaceCurve.from_segments(e.tri, segs)
    assert [p.face for p in c.pieces] == [1, 2]
    assert curve_length(c, e.lengths) == pytest.approx(2 * math.sqrt(3) / 6, abs=1e-12)
    rep = surface_curve_length(c, e)
    assert rep.converged and rep.length == pytest.approx(rep.face_length, abs=1e-9)


def test_discontinuous_curve_rejected(engines):
    e = engines["pillow"]
    with pytest.raises(ValueError):
        SurfaceCurve.from_segments(e.tri, [(1, (1, 0, 0), (0, 1, 0)), (2, (0, 0, 1), (0, 1, 0))])


def test_parse_curve():
    c = parse_curve("# a curve\nseg 1 1,0,0 0,1,0 0,0.5,0.5\nseg 2 0,0.5,0.5 1,0,0\n")
    assert [p.face for p in c.pieces] == [1, 2]
    assert c.pieces[0].points[2] == (0.0, 0.5, 0.5)
    with pytest.raises(ValueError):
        parse_curve("segment 1 1,0,0 0,1,0")
    with pytest.raises(ValueError):
        parse_curve("seg x 1,0,0 0,1,0")
