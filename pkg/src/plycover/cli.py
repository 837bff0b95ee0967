"""Command line interface.

Exit codes: 0 success, 1 validation failure (uncovered points or a ply bound
exceeded under ``verify --assert-ply``), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bench import bench, to_csv
from .generate import KINDS, default_seed, gen_instance
from .io import FormatError, dumps, load_cover, load_instance, load_polygon, save
from .oracle import OracleRefused, opt_1ply_box_cover
from .render import render_svg
from .runner import cover_objects, parse_shape, run_cover, shape_lengths
from .verify import exact_ply


def _params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise FormatError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    inst = gen_instance(args.kind, args.n, args.dim, seed, **_params(args.param))
    _emit(dumps(inst) + "\n", args.output)
    return 0


def cmd_cover(args) -> int:
    inst = load_instance(args.input)
    poly = load_polygon(args.polygon_file) if args.polygon_file else None
    shape = parse_shape(args.shape, poly)
    doc = run_cover(inst, shape)
    if args.seed is not None:
        doc.provenance["seed"] = args.seed
    _emit(dumps(doc) + "\n", args.output)
    if args.svg:
        render_svg(inst, doc, args.svg)
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    doc = load_cover(args.cover)
    report = exact_ply(cover_objects(doc), inst.points)
    out = report.to_dict()
    ok = report.valid
    if args.assert_ply is not None:
        out["assert_ply"] = args.assert_ply
        ok = ok and report.ply <= args.assert_ply
    out["ok"] = ok
    _emit(json.dumps(out, indent=1, sort_keys=True) + "\n", args.output)
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    shape = parse_shape(args.shape)
    res = opt_1ply_box_cover(inst.points, shape_lengths(shape), args.n_max)
    _emit(json.dumps(res.to_dict(), indent=1, sort_keys=True) + "\n", args.output)
    return 0


def cmd_bench(args) -> int:
    config = json.loads(Path(args.config).read_text()) if args.config else {}
    if args.n:
        config["ns"] = args.n
    if args.algorithm:
        config["algorithms"] = args.algorithm
    if args.generator:
        config["generators"] = args.generator
    if args.seed is not None:
        config["seeds"] = [args.seed]
    if args.polygon_file:
        config["polygon"] = [list(v) for v in load_polygon(args.polygon_file).vertices]
    _emit(to_csv(bench(config, jobs=args.jobs)), args.output)
    return 0


def cmd_render(args) -> int:
    inst = load_instance(args.instance)
    doc = load_cover(args.cover) if args.cover else None
    render_svg(inst, doc, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plycover", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--kind", choices=KINDS, default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--seed", type=int)
    g.add_argument("--param", action="append", metavar="KEY=VALUE")
    g.add_argument("--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("cover", help="compute a cover for an instance")
    c.add_argument("--input", required=True)
    c.add_argument("--shape", required=True)
    c.add_argument("--polygon-file")
    c.add_argument("--seed", type=int)
    c.add_argument("--output")
    c.add_argument("--svg")
    c.set_defaults(func=cmd_cover)

    v = sub.add_parser("verify", help="coverage, membership and exact ply of a cover")
    v.add_argument("--instance", required=True)
    v.add_argument("--cover", required=True)
    v.add_argument("--assert-ply", type=int)
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact minimum 1-ply box cover (small n)")
    o.add_argument("--instance", required=True)
    o.add_argument("--shape", required=True, help="square | rect:a,b | cube | hyperbox:l1,..")
    o.add_argument("--n-max", type=int)
    o.add_argument("--output")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="run a benchmark campaign, CSV output")
    b.add_argument("--config")
    b.add_argument("--n", type=int, action="append")
    b.add_argument("--algorithm", action="append")
    b.add_argument("--generator", action="append")
    b.add_argument("--polygon-file")
    b.add_argument("--seed", type=int)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--output")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="render an instance and cover to SVG")
    r.add_argument("--instance", required=True)
    r.add_argument("--cover")
    r.add_argument("--output", "--svg", dest="output", required=True)
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OracleRefused, ValueError, OSError) as exc:
        print(f"plycover: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
