"""Command-line entry point: ``isotet verify | conjugate | mesh``.

Negative coordinates need the ``=`` form so argparse does not read them
as options, e.g. ``isotet conjugate --tet t.json --point=-1,0,0``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from ..errors import GeometryError, UnknownSuite
from ..geom3 import AtInfinity
from ..isogonal import OnEdgeLine, Point, VertexDegenerate, isogonal_conjugate
from ..tetra import Tetrahedron, canonical_embedding
from .mesh import SURFACES, export_mesh
from .sampling import TrialConfig
from .suites import SUITE_IDS, run_suite


def _floats(text: str, n: int) -> list[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def load_tetrahedron(path) -> Tetrahedron:
    """Read ``{"params": [a, b, c]}`` or ``{"vertices": [[x, y, z], ...]}``."""
    data = json.loads(Path(path).read_text())
    if "params" in data:
        return canonical_embedding(tuple(float(x) for x in data["params"]))
    if "vertices" in data:
        verts = np.asarray(data["vertices"], float)
        if verts.shape != (4, 3):
            raise ValueError("'vertices' must be four [x, y, z] triples")
        return Tetrahedron(verts)
    raise ValueError("tetrahedron file needs a 'params' or 'vertices' key")


def _cmd_verify(args) -> int:
    ids = list(SUITE_IDS) if args.suite == "all" else [args.suite]
    cfg = TrialConfig(seed=args.seed, trials=args.trials, tol_pos=args.tol_pos, tol_ang=args.tol_ang)
    try:
        reports = [run_suite(s, cfg, workers=args.workers) for s in ids]
    except UnknownSuite:
        print(f"isotet: unknown suite {args.suite!r}; choose from {', '.join(SUITE_IDS)} or 'all'", file=sys.stderr)
        return 2
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.suite:9s} trials={r.trials} failures={r.failures} max_residual={r.max_residual:.3e} {r.residual_unit}")
    if args.json:
        payload = [r.to_dict() for r in reports] if args.suite == "all" else reports[0].to_dict()
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _describe(result) -> dict:
    if isinstance(result, Point):
        return {"kind": "point", "point": result.point.tolist()}
    if isinstance(result, AtInfinity):
        return {"kind": "at_infinity", "direction": np.asarray(result.direction).tolist()}
    if isinstance(result, VertexDegenerate):
        return {"kind": "vertex", "vertex": result.vertex}
    if isinstance(result, OnEdgeLine):
        return {"kind": "edge_line", "edge": result.edge}
    raise TypeError(type(result))


def _cmd_conjugate(args) -> int:
    t = load_tetrahedron(args.tet)
    out = _describe(isogonal_conjugate(t, args.point))
    if args.json:
        print(json.dumps(out))
    elif out["kind"] == "point":
        print("%.17g %.17g %.17g" % tuple(out["point"]))
    elif out["kind"] == "at_infinity":
        print("at infinity, direction %.17g %.17g %.17g" % tuple(out["direction"]))
    elif out["kind"] == "vertex":
        print(f"point is vertex {out['vertex']}: every point of the opposite faceplane is a conjugate")
    else:
        print(f"point is on edgeline {out['edge']}: every point of the opposite edgeline is a conjugate")
    return 0


def _cmd_mesh(args) -> int:
    data = export_mesh(args.surface, args.params, args.extent, args.res)
    Path(args.out).write_bytes(data)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isotet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run randomized verification suites")
    v.add_argument("--suite", required=True, help="suite id or 'all'")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol-pos", type=float, default=1e-8, help="positional tolerance relative to R")
    v.add_argument("--tol-ang", type=float, default=1e-8, help="angular tolerance in radians")
    v.add_argument("--json", metavar="PATH", help="write the report(s) as JSON")
    v.add_argument("--workers", type=int, default=1, help=argparse.SUPPRESS)
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("conjugate", help="isogonal conjugate of a point")
    c.add_argument("--tet", required=True, metavar="FILE")
    c.add_argument("--point", required=True, type=lambda s: _floats(s, 3), metavar="x,y,z")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_conjugate)

    m = sub.add_parser("mesh", help="export a surface as a grid mesh")
    m.add_argument("--surface", required=True, choices=sorted(SURFACES))
    m.add_argument("--params", required=True, type=lambda s: _floats(s, 3), metavar="a,b,c")
    m.add_argument("--extent", required=True, type=float)
    m.add_argument("--res", required=True, type=int)
    m.add_argument("--out", required=True, metavar="FILE")
    m.set_defaults(func=_cmd_mesh)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GeometryError, ValueError, OSError) as exc:
        print(f"isotet: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
