"""Command-line front end.

Every command prints one JSON report (or a text rendering of it with
``--format text``).  Exit status: 0 on success, 1 on a domain error (the
report is then an error object), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

from . import __version__, fixtures
from .curves import parse_curve, surface_curve_length
from .errors import ConeMetricError
from .flat import cone_angles, gauss_bonnet_residual, parse_lengths, parse_point
from .geodesic import DEFAULT_K, DistanceEngine
from .gluing import parse_spec, serialize, validate
from .properties import Context, random_lengths, run
from .teich import chart_dimension, gb_membership, gb_residual, invariants

SEED_ENV = "FLATSURF_SEED"


class _Inputs:
    """Reads input files once and remembers their digests."""

    def __init__(self):
        self.digests = {}

    def read(self, path: str) -> str:
        with open(path, "rb") as fh:
            data = fh.read()
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def complex(self, path):
        return validate(parse_spec(self.read(path)))

    def metric(self, complex_path, lengths_path):
        tri = self.complex(complex_path)
        return tri, parse_lengths(self.read(lengths_path), tri)


def _vertex_label(v):
    return f"{v.face}.{v.corner}"


def cmd_validate(args, io):
    tri = io.complex(args.complex)
    out = {
        **tri.summary(),
        "vertex_classes": [[_vertex_label(c) for c in cls] for cls in tri.vertex_classes],
        "edge_classes": [[str(s) for s in cls] for cls in tri.edge_classes],
    }
    if args.emit_canonical:
        out["canonical"] = serialize(tri.spec)
    return out


def cmd_info(args, io):
    tri = io.complex(args.complex)
    out = cmd_validate(argparse.Namespace(complex=args.complex, emit_canonical=True), io)
    out["vertex_degrees"] = {_vertex_label(cls[0]): len(cls) for cls in tri.vertex_classes}
    return out


def cmd_angles(args, io):
    tri, l = io.metric(args.complex, args.lengths)
    rep = cone_angles(l)
    return {
        **rep.to_json(),
        "euler_char": tri.euler_char,
        "gb_residual": gauss_bonnet_residual(l),
    }


def cmd_gb(args, io):
    if args.angles is not None:
        if args.complex or args.chi is None:
            raise _Usage("use either 'gb <complex> <lengths>' or 'gb --angles ... --chi c'")
        angles = [float(a) for a in args.angles.split(",")]
        res = gb_residual(angles, args.chi)
        return {"pass": gb_membership(angles, args.chi), "residual": res, "chi": args.chi}
    if not args.complex or not args.lengths:
        raise _Usage("gb needs a complex and a lengths file, or --angles and --chi")
    out = cmd_angles(args, io)
    out["pass"] = abs(out["gb_residual"]) <= 1e-9
    return out


def _segments_json(segs):
    return [{"face": f, "start": list(p), "end": list(q)} for f, p, q in segs]


def cmd_dist(args, io):
    tri, l = io.metric(args.complex, args.lengths)
    x, y = parse_point(tri, args.x), parse_point(tri, args.y)
    engine = DistanceEngine(l, args.k)
    if args.mode == "exact":
        d, segs = engine.geodesic_segments(x, y)
        path = _segments_json(segs)
    else:
        d, path = engine.distance_approx(x, y, args.k), None
    return {"distance": d, "mode": args.mode, "k": args.k, "path": path}


def cmd_length(args, io):
    tri, l = io.metric(args.complex, args.lengths)
    curve = parse_curve(io.read(args.curve))
    curve.check_continuity(tri)
    return surface_curve_length(curve, DistanceEngine(l), args.depth).to_json()


def cmd_chart(args, io):
    return {"dimension": chart_dimension(io.complex(args.complex))}


def cmd_invariants(args, io):
    _, l = io.metric(args.complex, args.lengths)
    return invariants(l).to_json()


def cmd_proptest(args, io):
    import random

    contexts = []
    for name in fixtures.NAMES:
        _, l = fixtures.load(name)
        contexts.append(Context(name, l))
        rl = random_lengths(l.triangulation, random.Random(f"{args.seed}:{name}"))
        contexts.append(Context(f"{name}~random", rl))
    pairs = args.inputs or []
    if len(pairs) % 2:
        raise _Usage("proptest inputs come in <complex> <lengths> pairs")
    for c, lp in zip(pairs[::2], pairs[1::2]):
        _, l = io.metric(c, lp)
        contexts.append(Context(c, l))
    results = run(contexts, args.trials, args.seed, args.only)
    return {
        "trials_per_complex": args.trials,
        "complexes": [c.name for c in contexts],
        "properties": results,
        "all_passed": all(r["failed"] == 0 for r in results.values()),
    }


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "angles": cmd_angles,
    "gb": cmd_gb,
    "dist": cmd_dist,
    "length": cmd_length,
    "chart": cmd_chart,
    "invariants": cmd_invariants,
    "proptest": cmd_proptest,
}


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="conemetric", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"conemetric {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a gluing file")
    s.add_argument("complex")
    s.add_argument("--emit-canonical", action="store_true")

    s = sub.add_parser("info", parents=[common], help="quotient data of a gluing")
    s.add_argument("complex")

    for name in ("angles", "invariants"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("complex")
        s.add_argument("lengths")

    s = sub.add_parser("gb", parents=[common], help="Gauss-Bonnet check")
    s.add_argument("complex", nargs="?")
    s.add_argument("lengths", nargs="?")
    s.add_argument("--angles")
    s.add_argument("--chi", type=int)

    s = sub.add_parser("dist", parents=[common], help="distance between two points")
    s.add_argument("complex")
    s.add_argument("lengths")
    s.add_argument("x", help="<face>:<b1>,<b2>,<b3>")
    s.add_argument("y")
    s.add_argument("--mode", choices=("exact", "approx"), default="exact")
    s.add_argument("--k", type=int, default=DEFAULT_K)

    s = sub.add_parser("length", parents=[common], help="length of a curve")
    s.add_argument("complex")
    s.add_argument("lengths")
    s.add_argument("curve")
    s.add_argument("--depth", type=int, default=20)

    s = sub.add_parser("chart", parents=[common], help="edge-length chart dimension")
    s.add_argument("complex")

    s = sub.add_parser("proptest", parents=[common], help="randomised property suites")
    s.add_argument("inputs", nargs="*", help="extra <complex> <lengths> pairs")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--only", action="append", help="restrict to a property (repeatable)")
    return p


def _render_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_text(val, indent + "  "))
        elif isinstance(val, str) and "\n" in val:
            lines.append(f"{indent}{key}:")
            lines += [f"{indent}  {v}" for v in val.rstrip().splitlines()]
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if os.environ.get(SEED_ENV):
        try:
            args.seed = int(os.environ[SEED_ENV])
        except ValueError:
            parser.error(f"{SEED_ENV} must be an integer")
    io = _Inputs()
    header = {"tool": "conemetric", "version": __version__, "command": args.command, "seed": args.seed}
    status = 0
    try:
        body = COMMANDS[args.command](args, io)
        if args.command == "proptest" and not body["all_passed"]:
            status = 1
    except _Usage as exc:
        parser.error(str(exc))
    except (ConeMetricError, ValueError, OSError) as exc:
        body = exc.to_json() if isinstance(exc, ConeMetricError) else {
            "error": type(exc).__name__, "message": str(exc)}
        status = 1
    report = _jsonable({**header, "inputs": io.digests, **body})
    if args.format == "json":
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        stdout.write(_render_text(report) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
