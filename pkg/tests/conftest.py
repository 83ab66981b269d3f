import math
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conemetric import fixtures
from conemetric.gluing import GluingSpec, Pairing, SideRef, validate
from conemetric.errors import GluingError

SQRT3 = math.sqrt(3.0)


@pytest.fixture(params=fixtures.NAMES)
def fixture_name(request):
    return request.param


@pytest.fixture
def complex_(fixture_name):
    return fixtures.load(fixture_name)


@pytest.fixture(scope="session")
def pillow():
    return fixtures.load("pillow")


@pytest.fixture(scope="session")
def torus():
    return fixtures.load("torus")


@pytest.fixture(scope="session")
def tetra():
    return fixtures.load("tetrahedron")


def random_gluing(rng: random.Random, n: int) -> GluingSpec:
    """Random pairing of the 3n sides with random orientations."""
    sides = [SideRef(f, k) for f in range(1, n + 1) for k in (1, 2, 3)]
    rng.shuffle(sides)
    pairings = tuple(
        Pairing(sides[i], sides[i + 1], rng.choice(("keep", "flip")))
        for i in range(0, len(sides), 2)
    )
    return GluingSpec(n, pairings)


def random_triangulation(rng: random.Random, max_faces: int = 12):
    while True:
        n = 2 * rng.randint(1, max_faces // 2)
        try:
            return validate(random_gluing(rng, n))
        except GluingError:
            continue


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("[")[1].split("]")[0])):
        terminalreporter.write_line(line)
