"""Command-line interface.

Exit codes: 0 success, 2 validation or usage error, 3 search budget exceeded.
``COARSEPLANE_THREADS`` caps worker processes; outputs do not depend on it.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import export, generators
from .errors import CoarsePlaneError
from .hull import geodetic_hull
from .isoperimetry import DEFAULT_ENUM_BUDGET, isoperimetry
from .metric import DEFAULT_GEODESIC_CAP
from .pipeline import Caps, analyze
from .planar import load


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _schedule(text: str) -> list[tuple[int, int]]:
    """Parse ``face:n,face:n``."""
    out = []
    for item in text.split(","):
        try:
            f, n = item.split(":")
            out.append((int(f), int(n)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"schedule entries look like FACE:N, got {item!r}")
    return out


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


FAMILY_PARAMS = {
    "grid": ("n",),
    "tessellation": ("p", "q", "r"),
    "g1": ("p", "q", "r", "ns", "schedule"),
    "g2": ("p", "q", "r", "ns", "schedule"),
    "dyadic": ("levels", "width"),
    "dyadic_square": ("a",),
    "composite": ("N", "levels"),
}
REQUIRED = {"grid": ("n",), "tessellation": ("p", "q", "r"), "dyadic": ("levels", "width"),
            "dyadic_square": ("a",), "composite": ("N",)}


def cmd_gen(args) -> int:
    params = {}
    for name in FAMILY_PARAMS[args.family]:
        val = getattr(args, name)
        if val is not None:
            params[name] = val
    missing = [n for n in REQUIRED.get(args.family, ()) if n not in params]
    if missing:
        raise SystemExit(f"gen {args.family}: missing --{', --'.join(missing)}")
    pmap = generators.generate(generators.GeneratorSpec(args.family, params, args.seed))
    _write(pmap.dumps(), args.output)
    return 0


def cmd_analyze(args) -> int:
    caps = Caps(size_cap=args.size_cap, enum_budget=args.enum_budget,
                geodesic_cap=args.geodesic_cap, seed=args.seed)
    _write(_dump(analyze(load(args.input), caps)), args.output)
    return 0


def cmd_hull(args) -> int:
    trace = geodetic_hull(load(args.input), args.face, args.geodesic_cap, strict=args.strict)
    _write(_dump(trace.to_json()), args.output)
    return 0


def cmd_profile(args) -> int:
    rep = isoperimetry(load(args.input), args.cap, args.enum_budget)
    _write(_dump(rep.to_json()), args.output)
    return 0


def cmd_export(args) -> int:
    pmap = load(args.input)
    text = export.to_dot(pmap) if args.format == "dot" else export.to_svg(pmap)
    _write(text, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coarseplane", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a window")
    g.add_argument("family", choices=generators.FAMILIES)
    g.add_argument("--n", type=_positive)
    g.add_argument("--p", type=_positive)
    g.add_argument("--q", type=_positive)
    g.add_argument("--r", type=int)
    g.add_argument("--ns", type=_ints, help="spoke sizes, e.g. 2,3,4 (faces drawn with --seed)")
    g.add_argument("--schedule", type=_schedule, help="explicit FACE:N,FACE:N list")
    g.add_argument("--levels", type=_positive)
    g.add_argument("--width", type=_positive)
    g.add_argument("--a", type=int)
    g.add_argument("--N", type=_positive)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="full report-v1 analysis")
    a.add_argument("-i", "--input", required=True)
    a.add_argument("--size-cap", type=_positive, default=8)
    a.add_argument("--enum-budget", type=_positive, default=DEFAULT_ENUM_BUDGET)
    a.add_argument("--geodesic-cap", type=_positive, default=DEFAULT_GEODESIC_CAP)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_analyze)

    h = sub.add_parser("hull", help="geodetic hull trace of one face")
    h.add_argument("-i", "--input", required=True)
    h.add_argument("--face", type=int, required=True)
    h.add_argument("--geodesic-cap", type=_positive, default=DEFAULT_GEODESIC_CAP)
    h.add_argument("--strict", action="store_true", help="fail when a geodesic touches the rim")
    h.add_argument("-o", "--output")
    h.set_defaults(func=cmd_hull)

    p = sub.add_parser("profile", help="Cheeger constant and iso-profile")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--cap", type=_positive, required=True)
    p.add_argument("--enum-budget", type=_positive, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_profile)

    e = sub.add_parser("export", help="DOT or SVG drawing")
    e.add_argument("-i", "--input", required=True)
    e.add_argument("--format", choices=("dot", "svg"), required=True)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CoarsePlaneError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
