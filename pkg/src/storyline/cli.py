"""Command-line front end.

Exit codes: 0 success, 1 invalid input (or a diagram that fails
verification), 2 budget exceeded, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import generators
from .bound import DEFAULT_BUDGET, lower_bound
from .eventgraph import build_event_graph
from .fpt import DEFAULT_MAX_EVALUATIONS, DEFAULT_MAX_K, BudgetExceededError, solve_exact
from .model import (
    Storyline,
    StorylineError,
    WiringDiagram,
    diagram_to_dict,
    parse_diagram,
    parse_storyline,
    serialize_diagram,
    serialize_storyline,
    verify_solution,
)
from .oracle import OracleBudgetError, brute_force_min_crossings
from .render import RenderConfig, render_svg
from .tree_layout import crossing_bound, layout_tree

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3


def _read_storyline(path: str) -> Storyline:
    return parse_storyline(Path(path).read_bytes())


def _read_diagram(path: str, s: Storyline) -> WiringDiagram:
    return parse_diagram(Path(path).read_bytes(), s)


def _emit(args: argparse.Namespace, payload: dict[str, Any], lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _write_diagram(args, s: Storyline, d: WiringDiagram, payload: dict[str, Any]) -> None:
    if args.out:
        Path(args.out).write_text(serialize_diagram(d, s))
    elif args.json:
        payload["diagram"] = diagram_to_dict(d, s)
    else:
        sys.stdout.write(serialize_diagram(d, s))


def cmd_solve(args: argparse.Namespace) -> int:
    s = _read_storyline(args.input)
    sol = solve_exact(s, max_k=args.max_k, max_evaluations=args.budget, full_table=args.full_table)
    payload: dict[str, Any] = {"crossings": sol.crossings, "solver": sol.solver_tag.value}
    _write_diagram(args, s, sol.diagram, payload)
    _emit(args, payload, [f"crossings: {sol.crossings}"])
    return EXIT_OK


def cmd_layout_tree(args: argparse.Namespace) -> int:
    s = _read_storyline(args.input)
    sol = layout_tree(s, root=args.root)
    bound = crossing_bound(s.k)
    payload: dict[str, Any] = {"crossings": sol.crossings, "bound": bound, "solver": sol.solver_tag.value}
    _write_diagram(args, s, sol.diagram, payload)
    _emit(args, payload, [f"crossings: {sol.crossings}", f"bound: {bound}"])
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    s = _read_storyline(args.input)
    r = lower_bound(build_event_graph(s), budget=args.budget)
    payload = {"l_star": r.l_star, "delta": r.delta, "m": r.m, "bound": r.bound, "exact": r.exact}
    _emit(
        args,
        payload,
        [f"L*: {r.l_star}", f"delta: {r.delta}", f"m: {r.m}", f"bound: {r.bound}", f"exact: {str(r.exact).lower()}"],
    )
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        s = generators.generate(args.kind, args.n, args.seed, args.events)
    except ValueError as exc:
        raise StorylineError(str(exc)) from None
    text = serialize_storyline(s)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    s = _read_storyline(args.storyline)
    d = _read_diagram(args.diagram, s)
    v = verify_solution(s, d)
    violations = [
        {"event": x.event, "time": x.time, "members": sorted(s.characters[c] for c in s.events[x.event].members)}
        for x in v.violations
    ]
    lines = [f"valid: {str(v.valid).lower()}", f"crossings: {v.crossings}"]
    lines += [f"violation: event {x['event']} {{{', '.join(x['members'])}}} at time {x['time']}" for x in violations]
    _emit(args, {"valid": v.valid, "crossings": v.crossings, "violations": violations}, lines)
    return EXIT_OK if v.valid else EXIT_INVALID


def cmd_render(args: argparse.Namespace) -> int:
    s = _read_storyline(args.storyline)
    d = _read_diagram(args.diagram, s)
    try:
        cfg = RenderConfig(delta_group=args.delta_group, delta_sep=args.delta_sep, column_width=args.column_width)
    except ValueError as exc:
        raise StorylineError(str(exc)) from None
    svg = render_svg(s, d, cfg, force=args.force)
    if args.svg:
        Path(args.svg).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    s = _read_storyline(args.input)
    best = brute_force_min_crossings(s, max_k=args.max_k, max_columns=args.max_columns)
    _emit(args, {"crossings": best}, [f"crossings: {best}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="storyline", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("solve", parents=[common], help="exact minimum-crossing diagram")
    p.add_argument("input")
    p.add_argument("--budget", type=int, default=DEFAULT_MAX_EVALUATIONS, help="max weight evaluations")
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    p.add_argument("--full-table", action="store_true", help="precompute all k!^2 distances")
    p.add_argument("--out", help="write diagram JSON here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("layout-tree", parents=[common], help="O(n log n) layout for a pairwise tree storyline")
    p.add_argument("input")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_layout_tree)

    p = sub.add_parser("bound", parents=[common], help="crossing lower bound from minimum linear arrangement")
    p.add_argument("input")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max nodes for the exact search")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("gen", parents=[common], help="generate a benchmark storyline")
    p.add_argument("kind", choices=generators.KINDS)
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--events", type=int, help="event count for random-general (default n)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check a diagram against a storyline")
    p.add_argument("storyline")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="draw a diagram as SVG")
    p.add_argument("storyline")
    p.add_argument("diagram")
    p.add_argument("--svg", help="output path (default stdout)")
    p.add_argument("--delta-group", type=float, default=8)
    p.add_argument("--delta-sep", type=float, default=24)
    p.add_argument("--column-width", type=float, default=40)
    p.add_argument("--force", action="store_true", help="render even if verification fails")
    p.set_defaults(func=cmd_render)

    # hidden: reproduces golden values with the brute-force solver
    p = sub.add_parser("oracle", parents=[common])
    p.add_argument("input")
    p.add_argument("--max-k", type=int, default=5)
    p.add_argument("--max-columns", type=int, default=12)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceededError, OracleBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except StorylineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
