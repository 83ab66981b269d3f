"""Glue triangles into surfaces and read off their combinatorics.

Two triangles glued along all three sides give a sphere or a torus
depending only on how each side is matched: ``keep`` sends the start of a
side to the start of its partner, ``flip`` sends it to the end.
"""

from conemetric import parse_spec, serialize, validate
from conemetric.errors import GluingError

pillow = validate(parse_spec("faces 2\nglue 1.1 2.1 keep\nglue 1.2 2.2 keep\nglue 1.3 2.3 keep"))
torus = validate(parse_spec("faces 2\nglue 1.1 2.1 flip\nglue 1.2 2.2 flip\nglue 1.3 2.3 flip"))

for name, tri in (("pillow", pillow), ("torus", torus)):
    s = tri.summary()
    print(f"{name:7s} V={s['V']} E={s['E']} F={s['F']} chi={s['chi']}")
    print("        vertex classes:", [[f"{c.face}.{c.corner}" for c in cls] for cls in tri.vertex_classes])

# Every valid gluing satisfies |E| = 3|V| - 3chi, since 2|E| = 3|F|.
for tri in (pillow, torus):
    assert len(tri.edge_classes) == 3 * len(tri.vertex_classes) - 3 * tri.euler_char

# The canonical text is a fixed point of parse -> serialize.
text = serialize(torus.spec)
assert serialize(validate(parse_spec(text)).spec) == text
print("\ncanonical torus:\n" + text)

# Malformed input fails with a typed error.
for bad in ("faces 1\nglue 1.1 1.1 keep", "faces 2\nglue 1.1 2.1 keep"):
    try:
        validate(parse_spec(bad))
    except GluingError as exc:
        print(f"rejected ({exc.kind}): {exc}")
