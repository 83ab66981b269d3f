"""Bundled gluings with unit-scale lengths and their hand-derived data."""

import json
from importlib import resources

NAMES = ("pillow", "torus", "tetrahedron")


def text(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def expected() -> dict:
    return json.loads(text("expected.json"))


def load(name: str):
    """``(triangulation, lengths)`` for a bundled complex."""
    from ..flat import parse_lengths
    from ..gluing import parse_spec, validate

    tri = validate(parse_spec(text(f"{name}.glue")))
    return tri, parse_lengths(text(f"{name}.len"), tri)
