import random
from unittest import mock

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conemetric import fixtures, flat, geodesic
from conemetric.properties import (
    PROPERTIES,
    Context,
    local_sample,
    random_bary,
    random_lengths,
    run,
)

from conftest import random_triangulation


def contexts():
    out = []
    for name in fixtures.NAMES:
        tri, l = fixtures.load(name)
        out.append(Context(name, l))
        out.append(Context(f"{name}~", random_lengths(tri, random.Random(name))))
    return out


def test_every_property_passes_on_fixtures():
    res = run(contexts(), 10, seed=0)
    assert set(res) == set(PROPERTIES)
    for name, entry in res.items():
        assert entry["failed"] == 0, (name, entry["counterexample"])
        assert entry["trials"] == 60


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_properties_on_random_gluings(seed):
    rng = random.Random(seed)
    tri = random_triangulation(rng, 6)
    ctx = Context("random", random_lengths(tri, rng))
    names = ["side_transfer", "face_agreement", "locality", "metric_axioms", "geodesic_witness"]
    res = run([ctx], 3, seed, names)
    assert all(r["failed"] == 0 for r in res.values()), res


def test_inflated_radius_is_caught():
    orig = geodesic.safety_radius
    with mock.patch.object(geodesic, "safety_radius", lambda l, x: 4 * orig(l, x)):
        res = run(contexts(), 30, seed=0, names=["metric_axioms", "approx_upper_bound"])
    failed = [n for n, r in res.items() if r["failed"]]
    assert failed
    cex = res[failed[0]]["counterexample"]
    assert {"complex", "trial", "lengths"} <= set(cex)


def test_crash_counts_as_counterexample():
    def boom(ctx, rng):
        raise ZeroDivisionError("x")

    with mock.patch.dict(PROPERTIES, {"boom": boom}):
        res = run(contexts()[:1], 2, 0, ["boom"])
    assert res["boom"]["failed"] == 2
    assert res["boom"]["counterexample"]["exception"].startswith("ZeroDivisionError")


def test_runs_are_order_independent():
    a = run(contexts(), 4, 3, ["locality", "homothety"])
    b = run(list(reversed(contexts())), 4, 3, ["homothety", "locality"])
    assert a == b


def test_random_bary_is_valid():
    rng = random.Random(0)
    for _ in range(1000):
        b = random_bary(rng)
        assert min(b) >= 0 and abs(sum(b) - 1) < 1e-12


def test_local_sample_is_local():
    ctx = contexts()[0]
    rng = random.Random(1)
    for _ in range(50):
        x, z, face, d, r = local_sample(ctx, rng)
        assert d < r and face in x.faces() and face in z.faces()


def test_random_lengths_respect_triangle_inequality():
    rng = random.Random(2)
    tri, _ = fixtures.load("tetrahedron")
    for _ in range(50):
        l = random_lengths(tri, rng)
        assert all(0.6 <= v <= 1.4 for v in l.values.values())


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_property_signatures(name):
    tri, l = fixtures.load("pillow")
    assert PROPERTIES[name](Context("p", l), random.Random(0)) is None


def test_negated_orientation_in_point_transfer_is_caught():
    # orientation flipped when points cross a side, geometry left intact
    orig = flat.bary_on_side
    with mock.patch.object(flat, "bary_on_side", lambda side, t: orig(side, 1.0 - t)):
        res = run(contexts(), 20, seed=0)
    failed = {n: r["failed"] for n, r in res.items() if r["failed"]}
    assert len(failed) >= 3, failed
