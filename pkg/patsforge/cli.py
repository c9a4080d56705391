"""Command-line front end.

Exit codes: 0 success, 1 when the answer is "no" (stuck run, no tile set
within budget, failing lemma), 2 for usage and file errors.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import formats
from .config import get_settings
from .errors import ConfigError, FormatError, FormulaError, PatsforgeError
from .gadget import DEFAULT_C, DEFAULT_R, SCALED_C, SCALED_R, build_blueprint, parse_blueprint, write_blueprint
from .reduction import (
    build_circuit_seed,
    build_seed,
    evaluate,
    parse_assignment,
    paint_circuit,
    parse_formula,
    reduce,
    satisfies_1in3,
    solve_1in3_bruteforce,
)
from .render import RenderSpec, render
from .rtas import Ambiguous, Completed, SimOutcome, TileSet, pattern_of, simulate
from .solver import brute_force_min, min_tileset
from .verifier import verify_gadget, verify_lemma_lb3, verify_lemma_lb4


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2


def _emit(text: str | bytes, out: Optional[str]) -> None:
    data = text.encode("utf-8") if isinstance(text, str) else text
    if out:
        try:
            Path(out).write_bytes(data)
        except OSError as exc:
            raise FormatError(f"cannot write {out}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _blueprint(args: argparse.Namespace):
    if getattr(args, "blueprint", None):
        return parse_blueprint(formats.read_text(args.blueprint))
    return build_blueprint(args.c, args.r)


# --- subcommands -----------------------------------------------------------


def cmd_reduce(args: argparse.Namespace) -> int:
    f = parse_formula(formats.read_text(args.formula))
    p = paint_circuit(f, args.h) if args.h is not None else reduce(f, _blueprint(args))
    _emit(formats.write_pattern(p), args.output)
    return EXIT_OK


def _diagnose(ts: TileSet, outcome: SimOutcome) -> List[str]:
    if isinstance(outcome, Completed):
        a = outcome.assembly
        used = {int(i) for row in a.cells for i in row}
        return [f"completed {a.width}x{a.height} using {len(used)} of {len(ts)} tile types"]
    if isinstance(outcome, Ambiguous):
        names = ", ".join(ts[i].label() for i in outcome.candidates)
        return [outcome.describe(), f"  competing types: {names}"]
    by_west = [t.label() for t in ts if t.west == outcome.west]
    by_south = [t.label() for t in ts if t.south == outcome.south]
    return [
        outcome.describe(),
        f"  types reading west={outcome.west}: {', '.join(by_west) or 'none'}",
        f"  types reading south={outcome.south}: {', '.join(by_south) or 'none'}",
    ]


def cmd_simulate(args: argparse.Namespace) -> int:
    ts = formats.parse_tileset(formats.read_text(args.tileset))
    seed = formats.parse_seed(formats.read_text(args.seed))
    target = formats.parse_pattern(formats.read_text(args.target)) if args.target else None
    order = random.Random(args.rng_seed) if args.order == "random" else args.order
    outcome = simulate(ts, seed, order=order, target=target)
    if args.diag:
        for line in _diagnose(ts, outcome):
            print(line, file=sys.stderr)
    if not isinstance(outcome, Completed):
        if not args.diag:
            print(outcome.describe(), file=sys.stderr)
        return EXIT_NO
    _emit(formats.write_pattern(pattern_of(outcome.assembly)), args.output)
    return EXIT_OK


def _no_system(budget: Optional[int]) -> str:
    if budget is None:
        return "no directed system assembles the pattern"
    return f"no directed system with at most {budget} tile types"


def cmd_solve(args: argparse.Namespace) -> int:
    p = formats.parse_pattern(formats.read_text(args.pattern))
    if args.oracle:
        best = brute_force_min(p, max_classes=args.budget)
        if best is None:
            print(_no_system(args.budget), file=sys.stderr)
            return EXIT_NO
        print(f"minimum tile types: {best}")
        return EXIT_OK
    solution = min_tileset(p, budget=args.budget, node_limit=args.node_limit)
    if solution is None:
        print(_no_system(args.budget), file=sys.stderr)
        return EXIT_NO
    print(f"minimum tile types: {solution.size}")
    if args.output:
        _emit(formats.write_system(solution.tileset, solution.seed), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.lemma == "lb4":
        c, r = (DEFAULT_C, DEFAULT_R) if args.full else (args.c or SCALED_C, args.r or SCALED_R)
        report = verify_lemma_lb4(c, r, exhaustive_words=not args.full)
    elif args.lemma == "lb3":
        report = verify_lemma_lb3(args.force_t3_south_zero, args.yellow_types)
    else:
        path = args.blueprint_file or args.blueprint
        if path:
            bp = parse_blueprint(formats.read_text(path))
        elif args.full:
            bp = build_blueprint(DEFAULT_C, DEFAULT_R)
        else:
            bp = build_blueprint(args.c or SCALED_C, args.r or SCALED_R)
        report = verify_gadget(bp)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_NO


def cmd_render(args: argparse.Namespace) -> int:
    p = formats.parse_pattern(formats.read_text(args.pattern))
    spec = RenderSpec(format=args.format, cell_size=args.cell_size)
    _emit(render(p, spec), args.output)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    f = parse_formula(formats.read_text(args.formula))
    if args.assignment:
        a = parse_assignment(formats.read_text(args.assignment))
    else:
        a = solve_1in3_bruteforce(f)
        if a is None:
            print("formula has no 1-in-3 satisfying assignment")
            return EXIT_NO
    report = evaluate(f, a, args.h)
    print(report.summary())
    return EXIT_OK if report.matches_circuit else EXIT_NO


def cmd_seedgen(args: argparse.Namespace) -> int:
    f = parse_formula(formats.read_text(args.formula))
    a = parse_assignment(formats.read_text(args.assignment))
    if args.circuit_only:
        seed = build_circuit_seed(f, a, args.h)
    else:
        seed = build_seed(f, a, _blueprint(args))
    if not satisfies_1in3(f, a):
        logger.info("assignment %s does not satisfy the formula; the seed will not assemble", a)
    _emit(formats.write_seed(seed), args.output)
    return EXIT_OK


def cmd_gadget(args: argparse.Namespace) -> int:
    _emit(write_blueprint(build_blueprint(args.c, args.r)), args.output)
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def _add_size(p: argparse.ArgumentParser, default_c: Optional[int], default_r: Optional[int]) -> None:
    p.add_argument("--c", type=int, default=default_c, help="LB4 width parameter")
    p.add_argument("--r", type=int, default=default_r, help="LB4 height parameter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patsforge", description="Pattern self-assembly toolkit")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a monotone 1-in-3 formula to a pattern")
    p.add_argument("formula")
    p.add_argument("--gadget", "--blueprint", dest="blueprint", help="gadget blueprint file")
    p.add_argument("--h", type=int, help="paint only the circuit for this gadget height")
    _add_size(p, DEFAULT_C, DEFAULT_R)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("simulate", help="run a tile set over a seed")
    p.add_argument("tileset")
    p.add_argument("seed")
    p.add_argument("--target", help="pattern the assembly must show")
    p.add_argument("--order", choices=("sweep", "row", "random"), default="sweep")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--diag", action="store_true", help="print outcome diagnostics to stderr")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("solve", help="smallest directed system for a pattern")
    p.add_argument("pattern")
    p.add_argument("--budget", type=int)
    p.add_argument("--oracle", action="store_true", help="exhaustive partition search (tiny patterns)")
    p.add_argument("--node-limit", type=int)
    p.add_argument("-o", "--output", help="write the witness tile set and seed")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a lower bound or the gadget")
    p.add_argument("lemma", choices=("lb4", "lb3", "gadget"))
    p.add_argument("blueprint_file", nargs="?", help="blueprint for `verify gadget`")
    _add_size(p, None, None)
    p.add_argument("--full", action="store_true", help="full-scale parameters")
    p.add_argument("--blueprint")
    p.add_argument("--force-t3-south-zero", action="store_true")
    p.add_argument("--yellow-types", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a pattern")
    p.add_argument("pattern")
    p.add_argument("--format", choices=("ascii", "ppm", "svg"), default="ascii")
    p.add_argument("--cell-size", type=int, default=8)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("eval", help="evaluate an assignment on the circuit")
    p.add_argument("formula")
    p.add_argument("assignment", nargs="?")
    p.add_argument("--h", type=int, default=3)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("seedgen", help="seed encoding a formula and an assignment")
    p.add_argument("formula")
    p.add_argument("assignment")
    p.add_argument("--circuit-only", action="store_true")
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--blueprint")
    _add_size(p, DEFAULT_C, DEFAULT_R)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_seedgen)

    p = sub.add_parser("gadget", help="write the default gadget blueprint")
    _add_size(p, DEFAULT_C, DEFAULT_R)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gadget)
    return parser


def _configure_logging(verbose: int) -> None:
    level = get_settings().log_level.upper()
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "blueprint_file", None) and args.lemma != "gadget":
            parser.error("a blueprint file only applies to `verify gadget`")
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _configure_logging(args.verbose)
        return args.func(args)
    except (FormatError, FormulaError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PatsforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
