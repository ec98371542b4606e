"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or
unreadable input.
"""

from __future__ import annotations

import argparse
import sys

from .generator import GeneratorConfig, GeneratorError, generate
from .io import ParseError, parse_edge_list, parse_instance, write_edge_list, write_instance
from .scene import SceneError, check_general_position, perturb_by_rotation
from .spanners import build_g7, build_g10, build_g15, build_g_infinity
from .svg import render_svg
from .verify import GRAPH_NAMES, run_verification
from .visibility import visibility_graph


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _build_graph(scene, name: str):
    vis = visibility_graph(scene)
    if name == "vis":
        return vis
    ginf = build_g_infinity(scene, vis)
    if name == "ginf":
        return ginf
    if name == "g15":
        return build_g15(scene, ginf)
    g10 = build_g10(scene, ginf)
    if name == "g10":
        return g10
    return build_g7(scene, ginf, g10)


def _cmd_gen(args) -> int:
    try:
        config = GeneratorConfig(
            n_points=args.n,
            n_obstacles=args.obstacles,
            obstacle_size=args.size,
            extent=args.extent,
            seed=args.seed,
        )
        scene = generate(config)
    except (ValueError, GeneratorError) as exc:
        print(f"gen: {exc}", file=sys.stderr)
        return 2
    _write(args.out, write_instance(scene))
    return 0


def _cmd_build(args) -> int:
    try:
        scene = parse_instance(_read(args.infile))
    except (OSError, ParseError) as exc:
        print(f"build: {exc}", file=sys.stderr)
        return 2
    gp = check_general_position(scene)
    if not gp.ok:
        print("build: scene is not in general position", file=sys.stderr)
        return 2
    graph = _build_graph(scene, args.graph)
    _write(args.out, write_edge_list(graph))
    return 0


def _cmd_verify(args) -> int:
    if len(args.graph or []) != len(args.edges or []):
        print("verify: each --graph needs a matching --edges", file=sys.stderr)
        return 2
    try:
        scene = parse_instance(_read(args.infile))
        substitutions = {}
        for name, path in zip(args.graph or [], args.edges or []):
            substitutions[name] = parse_edge_list(_read(path))
    except (OSError, ParseError) as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    outcomes = run_verification(scene, substitutions or None)
    for outcome in outcomes:
        print(outcome.line())
    return 0 if all(o.ok for o in outcomes) else 1


def _cmd_render(args) -> int:
    try:
        scene = parse_instance(_read(args.infile))
    except (OSError, ParseError) as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 2
    graph = None
    if args.graph is not None:
        gp = check_general_position(scene)
        if not gp.ok:
            print("render: scene is not in general position", file=sys.stderr)
            return 2
        graph = _build_graph(scene, args.graph)
    _write(args.out, render_svg(scene, graph, title=args.infile))
    return 0


def _cmd_perturb(args) -> int:
    try:
        scene = parse_instance(_read(args.infile))
    except (OSError, ParseError) as exc:
        print(f"perturb: {exc}", file=sys.stderr)
        return 2
    report = check_general_position(scene)
    if report.collinear_violations:
        print(
            "perturb: collinear triples cannot be fixed by rotation; "
            f"first: {report.collinear_violations[0]}",
            file=sys.stderr,
        )
        return 2
    k = 2
    while not report.ok:
        if k > 200:
            print("perturb: no suitable rotation found", file=sys.stderr)
            return 2
        rotated = perturb_by_rotation(scene, k)
        rep = check_general_position(rotated)
        if rep.ok:
            scene, report = rotated, rep
            break
        k += 1
    _write(args.out, write_instance(scene))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyspanner",
        description="Plane spanners among polygonal obstacles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True, help="total vertex count")
    p.add_argument("--obstacles", type=int, default=0)
    p.add_argument("--size", type=int, default=5, help="points sampled per obstacle")
    p.add_argument("--extent", type=int, default=1_000_000, help="coordinate range")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("build", help="build a graph and write its edge list")
    p.add_argument("--graph", choices=GRAPH_NAMES, required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="run every check against an instance")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument(
        "--graph",
        choices=GRAPH_NAMES,
        action="append",
        help="substitute this graph from an edge list (repeatable)",
    )
    p.add_argument("--edges", action="append", help="edge list for --graph")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="draw an instance as SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--graph", choices=GRAPH_NAMES)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("perturb", help="rotate an instance into general position")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_perturb)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SceneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
