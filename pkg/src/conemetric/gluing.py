"""Combinatorial gluing data for surfaces built from triangles.

A surface is described by ``n`` copies of a model triangle whose sides are
paired off.  Corners of the model triangle are labelled 1, 2, 3
counterclockwise; side ``k`` is the side opposite corner ``k`` and runs from
corner ``k+1`` to corner ``k+2`` (indices mod 3).

A pairing ``(a, b, orientation)`` identifies side ``a`` with side ``b``.
With ``keep`` the start corner of ``a`` is sent to the start corner of ``b``;
with ``flip`` it is sent to the end corner of ``b``.

The text format read by :func:`parse_spec`::

    # pillow: two triangles glued along their boundary
    faces 2
    glue 1.1 2.1 keep
    glue 1.2 2.2 keep
    glue 1.3 2.3 keep
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import (
    Disconnected,
    DuplicateSide,
    GluingSyntaxError,
    NonSurfaceLink,
    OutOfRange,
    SelfGluedSide,
    UnpairedSide,
)

ORIENTATIONS = ("keep", "flip")


class SideRef(NamedTuple):
    face: int
    side: int

    def __str__(self):
        return f"{self.face}.{self.side}"


class Corner(NamedTuple):
    face: int
    corner: int


class Pairing(NamedTuple):
    a: SideRef
    b: SideRef
    orientation: str

    @property
    def flipped(self) -> bool:
        return self.orientation == "flip"


def side_start(side: int) -> int:
    """Corner at which side ``side`` starts."""
    return side % 3 + 1


def side_end(side: int) -> int:
    """Corner at which side ``side`` ends."""
    return (side + 1) % 3 + 1


def sides_at_corner(corner: int) -> tuple[int, int]:
    # the side ending at the corner, then the side starting there
    return (corner % 3 + 1, (corner + 1) % 3 + 1)


@dataclass(frozen=True)
class GluingSpec:
    face_count: int
    pairings: tuple[Pairing, ...] = ()

    def __post_init__(self):
        if self.face_count < 1:
            raise OutOfRange(f"face count must be positive, got {self.face_count}")
        for p in self.pairings:
            for s in (p.a, p.b):
                _check_side(s, self.face_count)
            if p.orientation not in ORIENTATIONS:
                raise ValueError(f"unknown orientation {p.orientation!r}")


def _check_side(s: SideRef, n: int) -> None:
    if not 1 <= s.face <= n:
        raise OutOfRange(f"face {s.face} out of range 1..{n}")
    if not 1 <= s.side <= 3:
        raise OutOfRange(f"side {s.side} out of range 1..3")


# ---------------------------------------------------------------- parsing


def _parse_side(tok: str, n: int, line: int, col: int) -> SideRef:
    parts = tok.split(".")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise GluingSyntaxError(f"expected <face>.<side>, got {tok!r}", line, col)
    s = SideRef(int(parts[0]), int(parts[1]))
    try:
        _check_side(s, n)
    except OutOfRange as exc:
        raise OutOfRange(f"{exc} (line {line}, column {col})") from None
    return s


def _tokens(raw: str):
    """Yield (column, token) pairs, 1-based columns, comments stripped."""
    text = raw.split("#", 1)[0]
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        yield i + 1, text[i:j]
        i = j


def parse_spec(text: str) -> GluingSpec:
    """Parse the line-oriented gluing format.

    Pairings are kept in declaration order.  Raises
    :class:`GluingSyntaxError` (with line and column), :class:`OutOfRange`,
    :class:`DuplicateSide` or :class:`SelfGluedSide`.
    """
    n = None
    pairings: list[Pairing] = []
    seen: dict[SideRef, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = list(_tokens(raw))
        if not toks:
            continue
        col, head = toks[0]
        if head == "faces":
            if n is not None:
                raise GluingSyntaxError("repeated 'faces' line", lineno, col)
            if len(toks) != 2:
                raise GluingSyntaxError("expected 'faces <n>'", lineno, col)
            ncol, ntok = toks[1]
            if not ntok.isdigit() or int(ntok) < 1:
                raise GluingSyntaxError(f"bad face count {ntok!r}", lineno, ncol)
            n = int(ntok)
        elif head == "glue":
            if n is None:
                raise GluingSyntaxError("'glue' before 'faces'", lineno, col)
            if len(toks) != 4:
                raise GluingSyntaxError(
                    "expected 'glue <i>.<e> <j>.<f> <keep|flip>'", lineno, col
                )
            a = _parse_side(toks[1][1], n, lineno, toks[1][0])
            b = _parse_side(toks[2][1], n, lineno, toks[2][0])
            ocol, orient = toks[3]
            if orient not in ORIENTATIONS:
                raise GluingSyntaxError(f"bad orientation {orient!r}", lineno, ocol)
            if a == b:
                raise SelfGluedSide(f"side {a} glued to itself (line {lineno})")
            for s in (a, b):
                if s in seen:
                    raise DuplicateSide(
                        f"duplicate side {s} (lines {seen[s]} and {lineno})"
                    )
                seen[s] = lineno
            pairings.append(Pairing(a, b, orient))
        else:
            raise GluingSyntaxError(f"unknown directive {head!r}", lineno, col)
    if n is None:
        raise GluingSyntaxError("missing 'faces' line", 1, 1)
    return GluingSpec(n, tuple(pairings))


def serialize(spec: GluingSpec) -> str:
    """Canonical text: each pairing written smaller side first, sorted."""
    rows = []
    for p in spec.pairings:
        a, b = sorted((p.a, p.b))
        rows.append((a, b, p.orientation))
    rows.sort()
    lines = [f"faces {spec.face_count}"]
    lines += [f"glue {a} {b} {o}" for a, b, o in rows]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- validation


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller representative so roots are canonical
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def groups(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class Triangulation:
    """A validated gluing: a connected closed surface.

    Vertex and edge classes are named by their lexicographically smallest
    member, a :class:`Corner` and a :class:`SideRef` respectively.
    """

    spec: GluingSpec
    side_partner: dict = field(repr=False)  # SideRef -> (SideRef, flipped)
    vertex_classes: tuple = field(repr=False)  # tuple of sorted Corner tuples
    edge_classes: tuple = field(repr=False)  # tuple of sorted SideRef pairs
    euler_char: int = 0
    component_count: int = 1
    vertex_of: dict = field(default=None, repr=False, compare=False)
    edge_of: dict = field(default=None, repr=False, compare=False)

    @property
    def face_count(self) -> int:
        return self.spec.face_count

    @property
    def faces(self) -> range:
        return range(1, self.spec.face_count + 1)

    @property
    def vertex_ids(self) -> list[Corner]:
        return [c[0] for c in self.vertex_classes]

    @property
    def edge_ids(self) -> list[SideRef]:
        return [e[0] for e in self.edge_classes]

    def partner(self, face: int, side: int) -> tuple[SideRef, bool]:
        return self.side_partner[SideRef(face, side)]

    def map_corner(self, face: int, side: int, corner: int) -> Corner:
        """Image of an endpoint ``corner`` of side ``(face, side)`` across its pairing."""
        other, flipped = self.side_partner[SideRef(face, side)]
        at_start = corner == side_start(side)
        if at_start != flipped:
            return Corner(other.face, side_start(other.side))
        return Corner(other.face, side_end(other.side))

    def face_edges(self, face: int) -> tuple[SideRef, SideRef, SideRef]:
        """Edge class of each side of ``face``."""
        return tuple(self.edge_of[SideRef(face, k)] for k in (1, 2, 3))

    def face_vertices(self, face: int) -> tuple[Corner, Corner, Corner]:
        return tuple(self.vertex_of[Corner(face, c)] for c in (1, 2, 3))

    def summary(self) -> dict:
        return {
            "V": len(self.vertex_classes),
            "E": len(self.edge_classes),
            "F": self.face_count,
            "chi": self.euler_char,
        }


def rotation_cycles(spec_partner: dict, n: int) -> list[list[Corner]]:
    """Walk around every vertex, one corner at a time.

    A walk state is a corner together with the side it was entered through.
    From corner ``c`` of a face we leave through the other side at ``c``,
    cross to the partner side and land on the matching corner there.
    """
    seen_flags = set()
    cycles = []

    def cross(face, side, corner):
        other, flipped = spec_partner[SideRef(face, side)]
        at_start = corner == side_start(side)
        if at_start != flipped:
            return other, side_start(other.side)
        return other, side_end(other.side)

    for f in range(1, n + 1):
        for c in (1, 2, 3):
            first = sides_at_corner(c)[0]
            if (f, c, first) in seen_flags:
                continue
            cycle = []
            face, corner, entered = f, c, first
            while (face, corner, entered) not in seen_flags:
                seen_flags.add((face, corner, entered))
                cycle.append(Corner(face, corner))
                s1, s2 = sides_at_corner(corner)
                leave = s2 if entered == s1 else s1
                # the reversed flag describes the same sector walked backwards
                seen_flags.add((face, corner, leave))
                other, landed = cross(face, leave, corner)
                face, corner, entered = other.face, landed, other.side
            cycles.append(cycle)
    return cycles


def validate(spec: GluingSpec) -> Triangulation:
    """Check that ``spec`` describes a connected closed surface.

    Raises :class:`UnpairedSide`, :class:`NonSurfaceLink` or
    :class:`Disconnected`.
    """
    n = spec.face_count
    partner: dict[SideRef, tuple[SideRef, bool]] = {}
    for p in spec.pairings:
        if p.a == p.b:
            raise SelfGluedSide(f"side {p.a} glued to itself")
        for s, o in ((p.a, p.b), (p.b, p.a)):
            if s in partner:
                raise DuplicateSide(f"duplicate side {s}")
            partner[s] = (o, p.flipped)
    all_sides = [SideRef(f, k) for f in range(1, n + 1) for k in (1, 2, 3)]
    missing = [s for s in all_sides if s not in partner]
    if missing:
        raise UnpairedSide(
            "surface is not closed; unpaired sides: "
            + ", ".join(str(s) for s in missing)
        )

    faces = _UnionFind(range(1, n + 1))
    for p in spec.pairings:
        faces.union(p.a.face, p.b.face)
    components = len(faces.groups())
    if components != 1:
        raise Disconnected(f"gluing has {components} connected components")

    corners = _UnionFind([Corner(f, c) for f in range(1, n + 1) for c in (1, 2, 3)])
    for p in spec.pairings:
        a, b = p.a, p.b
        sa, ea = Corner(a.face, side_start(a.side)), Corner(a.face, side_end(a.side))
        sb, eb = Corner(b.face, side_start(b.side)), Corner(b.face, side_end(b.side))
        if p.flipped:
            sb, eb = eb, sb
        corners.union(sa, sb)
        corners.union(ea, eb)
    vclasses = sorted(tuple(sorted(g)) for g in corners.groups().values())

    # each vertex class must be swept out by a single walk around it
    cycles = rotation_cycles(partner, n)
    by_corner = {}
    for idx, cyc in enumerate(cycles):
        for c in cyc:
            by_corner.setdefault(c, set()).add(idx)
    for cls in vclasses:
        walks = set().union(*(by_corner[c] for c in cls))
        covered = sorted(c for w in walks for c in cycles[w])
        if len(walks) != 1 or covered != list(cls):
            raise NonSurfaceLink(
                f"link of vertex {cls[0].face}.{cls[0].corner} is not a single circle"
            )

    eclasses = sorted(tuple(sorted((p.a, p.b))) for p in spec.pairings)
    vertex_of = {c: cls[0] for cls in vclasses for c in cls}
    edge_of = {s: cls[0] for cls in eclasses for s in cls}
    chi = len(vclasses) - len(eclasses) + n
    return Triangulation(
        spec=spec,
        side_partner=partner,
        vertex_classes=tuple(vclasses),
        edge_classes=tuple(eclasses),
        euler_char=chi,
        component_count=1,
        vertex_of=vertex_of,
        edge_of=edge_of,
    )


def euler_characteristic(tri: Triangulation) -> int:
    nv, ne = len(tri.vertex_classes), len(tri.edge_classes)
    chi = nv - ne + tri.face_count
    if ne != 3 * nv - 3 * chi or 2 * ne != 3 * tri.face_count:
        raise AssertionError(
            f"edge count identity broken: |V|={nv} |E|={ne} chi={chi}"
        )
    return chi


def orbit_of_corner(tri: Triangulation, face: int, corner: int) -> Corner:
    return tri.vertex_of[Corner(face, corner)]


def orbit_of_side(tri: Triangulation, side: SideRef) -> SideRef:
    return tri.edge_of[SideRef(*side)]


def load(path) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        return validate(parse_spec(fh.read()))
