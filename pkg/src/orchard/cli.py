"""Command-line front end: ``orchard <command> [options]``.

Exit codes: 0 success, 1 parse/validation/usage error, 2 internal invariant
violation (evaluator disagreement, failing identity, bound broken).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .analysis import check_identities, classify_lines, formula_ocn_knn
from .document import dumps, loads, to_document
from .drawing import crossing_number, crossing_number_by_quadruples
from .errors import DocumentError, GenericityError, InvariantViolation, OrchardError
from .generators import GridSpec, convex_alternating, random_generic
from .search import ANNEAL, EXHAUSTIVE, MAXIMIZE, MINIMIZE, SearchTask, search

EXIT_OK, EXIT_INVALID, EXIT_INVARIANT = 0, 1, 2
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Failed(Exception):
    """Command produced a report but must exit nonzero."""

    def __init__(self, payload, code):
        self.payload = payload
        self.code = code


def _read_input(args) -> str:
    if args.input and args.input != "-":
        return Path(args.input).read_text()
    return sys.stdin.read()


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _grid(text: str) -> GridSpec:
    try:
        return GridSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must look like 4x4: {exc}") from None


# --- commands ---------------------------------------------------------------------


def cmd_eval(args) -> dict:
    d = loads(_read_input(args))
    direct = crossing_number(d)
    by_quads = crossing_number_by_quadruples(d)
    payload = {
        "command": "eval",
        "vertices": len(d),
        "edges": len(d.graph.edges),
        "crossing_number": direct,
        "by_quadruples": by_quads,
        "agreement": direct == by_quads,
    }
    if direct != by_quads:
        raise _Failed(payload, EXIT_INVARIANT)
    return payload


def cmd_decompose(args) -> dict:
    d = loads(_read_input(args))
    report = check_identities(d)
    payload = {"command": "decompose", **report.to_dict()}
    if args.lines:
        payload["lines"] = [r.to_dict() for r in classify_lines(d)]
    if not report.ok:
        raise _Failed(payload, EXIT_INVARIANT)
    return payload


def cmd_verify(args) -> dict:
    if args.max_n < 1:
        raise UsageError("verify: --max-n must be at least 1")
    rows = []
    for n in range(1, args.max_n + 1):
        formula = formula_ocn_knn(n)
        evaluated = crossing_number(convex_alternating(n))
        rows.append({"n": n, "formula": formula, "evaluated": evaluated, "match": formula == evaluated})
    payload = {"command": "verify", "rows": rows, "all_match": all(r["match"] for r in rows)}
    if not payload["all_match"]:
        raise _Failed(payload, EXIT_INVARIANT)
    return payload


def cmd_formula(args) -> dict:
    ns = list(args.n) if args.n else list(range(1, (args.max_n or 0) + 1))
    if not ns:
        raise UsageError("formula: give one or more n or --max-n")
    if any(n < 1 for n in ns):
        raise UsageError("formula: n must be positive")
    return {"command": "formula", "rows": [{"n": n, "value": formula_ocn_knn(n)} for n in ns]}


def cmd_gen(args) -> dict:
    if args.convex_alternating is not None:
        d = convex_alternating(args.convex_alternating)
    else:
        if args.seed is None:
            raise UsageError("gen --random requires --seed")
        d = random_generic(args.black, args.white, args.range, args.seed)
    return to_document(d)


def cmd_search(args) -> dict:
    strategy = EXHAUSTIVE if args.exhaustive else ANNEAL
    if strategy == ANNEAL and args.seed is None:
        raise UsageError("search --anneal requires --seed")
    if strategy == EXHAUSTIVE and args.grid is None:
        raise UsageError("search --exhaustive requires --grid WxH")
    common = dict(
        objective=MAXIMIZE if args.maximize else MINIMIZE,
        strategy=strategy,
        seed=args.seed if args.seed is not None else 0,
        budget=args.budget,
        grid=args.grid,
        cooling=args.cooling,
        radius=args.radius,
        box=args.box,
        t0=args.t0,
        restarts=args.restarts,
        workers=args.workers,
    )
    if args.knn is not None:
        task = SearchTask("knn", args.knn, **common)
    elif args.complete is not None:
        task = SearchTask("complete", args.complete, **common)
    else:
        d = loads(_read_input(args))
        task = SearchTask("explicit", graph=d.graph, colors=d.colors, **common)
    result = search(task)
    return {
        "command": "search",
        "task": {
            "family": task.family,
            "size": task.size if task.family != "explicit" else task.graph.m,
            "objective": task.objective,
            "strategy": task.strategy,
            "seed": task.seed,
            "budget": task.budget,
            "grid": str(task.grid) if task.grid else None,
        },
        "result": result.to_dict(),
        "document": to_document(result.best),
    }


# --- human formatting ---------------------------------------------------------------


def _human(payload: dict) -> str:
    command = payload.get("command")
    if command is None:
        return dumps(payload)
    lines = []
    if command == "eval":
        lines.append(f"crossing number   {payload['crossing_number']}")
        lines.append(f"by quadruples     {payload['by_quadruples']}")
        lines.append(f"agreement         {'yes' if payload['agreement'] else 'NO'}")
    elif command == "decompose":
        lines.append(f"n = {payload['n']}: A = {payload['A']}, B = {payload['B']}, C = {payload['C']}, "
                     f"total = {payload['total']}")
        for cls, t in payload["type_tables"].items():
            lines.append(f"  {cls:<12} y = {t['y']}")
        for c in payload["identities"]:
            tag = c["status"].upper() if c["fatal"] else f"{c['status']} (observation)"
            lines.append(f"  [{tag}] {c['name']}: {c['detail']}")
        lines.append("all fatal checks pass" if payload["all_pass"] else "FATAL CHECK FAILED")
    elif command == "verify":
        lines.append(f"{'n':>3} {'formula':>10} {'evaluated':>10}  match")
        for r in payload["rows"]:
            lines.append(f"{r['n']:>3} {r['formula']:>10} {r['evaluated']:>10}  {'yes' if r['match'] else 'NO'}")
    elif command == "formula":
        for r in payload["rows"]:
            lines.append(f"OCN(K_{r['n']},{r['n']}) = {r['value']}")
    elif command == "search":
        res = payload["result"]
        lines.append(f"{res['objective']} {payload['task']['family']} {payload['task']['size']}: "
                     f"value {res['value']} ({res['certificate']}, {res['evaluations']} evaluations)")
        lines.append(dumps(payload["document"]).rstrip())
    return "\n".join(lines) + "\n"


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--output", "-o", help="write output to this path instead of stdout")

    reader = _Parser(add_help=False)
    reader.add_argument("--input", "-i", help="drawing document path (default: stdin)")

    parser = _Parser(prog="orchard", description="Orchard crossing numbers of colored rectilinear drawings.")
    parser.add_argument("--version", action="version", version=f"orchard {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common, reader], help="crossing number of a drawing")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", parents=[common, reader], help="A/B/C split, tables and identity checks")
    p.add_argument("--lines", action="store_true", help="include per-line records")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="closed form against the convex alternating drawing")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("formula", parents=[common], help="tabulate 4n*C(n,3)")
    p.add_argument("n", type=int, nargs="*")
    p.add_argument("--max-n", type=int)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("gen", parents=[common], help="emit a drawing document")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--convex-alternating", type=_positive, metavar="N")
    mode.add_argument("--random", action="store_true")
    p.add_argument("--black", type=int, default=3)
    p.add_argument("--white", type=int, default=3)
    p.add_argument("--range", type=_positive, default=100, help="coordinates drawn from 0..RANGE-1")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("search", parents=[common, reader], help="optimise the crossing number")
    family = p.add_mutually_exclusive_group(required=True)
    family.add_argument("--knn", type=_positive, metavar="N", help="complete bipartite K_{N,N}")
    family.add_argument("--complete", type=_positive, metavar="M", help="complete graph K_M")
    family.add_argument("--explicit", action="store_true", help="graph and colors from --input document")
    strat = p.add_mutually_exclusive_group(required=True)
    strat.add_argument("--exhaustive", action="store_true", help="every generic placement on --grid")
    strat.add_argument("--anneal", action="store_true", help="seeded simulated annealing (needs --seed)")
    obj = p.add_mutually_exclusive_group()
    obj.add_argument("--minimize", action="store_true", default=True)
    obj.add_argument("--maximize", action="store_true")
    p.add_argument("--grid", type=_grid, metavar="WxH", help="grid for --exhaustive, e.g. 4x4")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=_positive, default=200_000,
                   help="anneal steps in total, or the enumeration cap (default 200000)")
    p.add_argument("--t0", type=float, help="initial temperature (default 0.05 * (4n*C(n,3) + 1) or 0.05 * (|E| + 1))")
    p.add_argument("--cooling", type=float, default=0.995, help="temperature factor per step")
    p.add_argument("--radius", type=int, default=3, help="largest coordinate offset of a move")
    p.add_argument("--box", type=_positive, help="coordinates stay in [0, BOX] (default 5 * vertices)")
    p.add_argument("--restarts", type=_positive, default=4, help="independent seeded restarts")
    p.add_argument("--workers", type=_positive, default=1, help="processes running restarts")
    p.set_defaults(func=cmd_search)
    return parser


def _error_payload(kind: str, exc: Exception) -> dict:
    err = {"kind": kind, "message": str(exc)}
    if isinstance(exc, GenericityError):
        err["violations"] = [list(v) for v in exc.violations]
    if isinstance(exc, DocumentError):
        err["field"] = exc.field
        err["line"] = exc.line
    return {"error": err}


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    as_json = args.json or args.command == "gen"
    code = EXIT_OK
    try:
        payload = args.func(args)
    except _Failed as failed:
        payload, code = failed.payload, failed.code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InvariantViolation as exc:
        payload, code = _error_payload("invariant", exc), EXIT_INVARIANT
    except (OrchardError, ValueError, OSError) as exc:
        payload, code = _error_payload("validation", exc), EXIT_INVALID
    if "error" in payload:
        print(f"error: {payload['error']['message']}", file=sys.stderr)
        if args.json:
            _emit(dumps(payload), args.output)
        return code
    _emit(dumps(payload) if as_json else _human(payload), args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
