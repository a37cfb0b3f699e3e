"""Command-line interface.

Every subcommand reads one JSON document from ``--input`` (default ``-`` for
stdin), prints a human-readable summary, and with ``--json`` prints a machine
JSON document instead.  Exit status 0 means success, 1 means the command ran
but the answer was negative (a failed check, no witness found), 2 means bad
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import metadata

from .algebra import DEFAULT_TRUNCATION, AlgebraElement
from .io import (
    matrix_from_json,
    matrix_to_json,
    quiver_from_json,
    quiver_to_json,
    search_result_to_json,
    sequence_check_to_json,
    swp_from_json,
)
from .mutation import StepReport, is_nondegenerate_along
from .quiver import ExchangeMatrix, WeightedQuiver, matrix_to_quiver, mutate_matrix, mutate_quiver
from .search import compatibility_report, search_nondegenerate

__all__ = ["main"]


def _fail(message: str):
    print("error: %s" % message, file=sys.stderr)
    raise SystemExit(2)


def _read_document(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            _fail("cannot read %s: %s" % (path, exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail("input is not valid JSON: %s" % exc)


def _emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _parse_sequence(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        _fail("--seq expects comma-separated vertex numbers, got %r" % text)


def _unwrap(document, key: str):
    if isinstance(document, dict) and key in document:
        return document[key]
    return document


def format_matrix(matrix: ExchangeMatrix) -> str:
    width = max(len(str(x)) for row in matrix.entries for x in row)
    lines = ["[ %s ]" % "  ".join(str(x).rjust(width) for x in row)
             for row in matrix.entries]
    lines.append("symmetrizer: %s" % (list(matrix.symmetrizer),))
    return "\n".join(lines)


def format_quiver(quiver: WeightedQuiver) -> str:
    lines = ["vertices: %s" % " ".join(
        "%d(w=%d)" % (i, w) for i, w in enumerate(quiver.weights, start=1))]
    for arrow in quiver.arrows:
        lines.append("  %s: %d -> %d" % (arrow.id, arrow.source, arrow.target))
    if not quiver.arrows:
        lines.append("  (no arrows)")
    return "\n".join(lines)


def format_potential(potential: AlgebraElement) -> str:
    if potential.is_zero():
        return "0"
    return str(potential)


def format_step(step: StepReport) -> str:
    removed = ", ".join("(%s, %s)" % pair for pair in step.removed_pairs) or "none"
    line = ("mutate at %d: removed pairs %s; correction rounds %d"
            % (step.vertex, removed, step.correction_rounds))
    if step.hit_truncation:
        line += "; hit truncation"
    if step.residual_2cycles:
        line += "; residual 2-cycles " + ", ".join(
            "{%d,%d}x%d" % (pair[0], pair[1], count)
            for pair, count in step.residual_2cycles)
    return line


def cmd_mutate_matrix(args) -> int:
    matrix = matrix_from_json(_unwrap(_read_document(args.input), "matrix"))
    for k in _parse_sequence(args.seq):
        matrix = mutate_matrix(matrix, k)
    if args.json:
        _emit_json({"matrix": matrix_to_json(matrix)})
    else:
        print(format_matrix(matrix))
    return 0


def cmd_mutate_quiver(args) -> int:
    quiver = quiver_from_json(_unwrap(_read_document(args.input), "quiver"))
    for k in _parse_sequence(args.seq):
        quiver = mutate_quiver(quiver, k)
    if args.json:
        _emit_json({"quiver": quiver_to_json(quiver)})
    else:
        print(format_quiver(quiver))
    return 0


def cmd_mutate_sp(args) -> int:
    swp = swp_from_json(_unwrap(_read_document(args.input), "sp"))
    check = is_nondegenerate_along(swp, _parse_sequence(args.seq))
    if args.json:
        _emit_json(sequence_check_to_json(check))
    else:
        for step in check.steps:
            print(format_step(step))
        print(format_quiver(check.final.species.quiver))
        print("potential: %s" % format_potential(check.final.potential))
        if not check.ok:
            print("degenerate: stopped at first unclean step")
    return 0 if check.ok else 1


def _quiver_from_document(document) -> WeightedQuiver:
    document = _unwrap(document, "quiver")
    if isinstance(document, dict) and "rows" in document:
        return matrix_to_quiver(matrix_from_json(document))
    if isinstance(document, dict) and "matrix" in document:
        return matrix_to_quiver(matrix_from_json(document["matrix"]))
    return quiver_from_json(document)


def cmd_search(args) -> int:
    quiver = _quiver_from_document(_read_document(args.input))
    result = search_nondegenerate(
        quiver, args.prime, _parse_sequence(args.seq),
        budget=args.budget, seed=args.seed, max_r=args.max_ext,
        max_cycle_length=args.max_cycle_length, truncation=args.truncation)
    if args.json:
        _emit_json(search_result_to_json(result))
        return 0 if result.found else 1
    if result.found:
        print("witness found: extension degree %d, attempt %d (%d attempts total)"
              % (result.base_degree, result.attempt, result.attempts))
        print("potential: %s" % format_potential(result.witness.potential))
        for step in result.check.steps:
            print(format_step(step))
        return 0
    print("no witness found after %d attempts over extension degrees %s"
          % (result.attempts, list(result.rungs)))
    return 1


def cmd_check(args) -> int:
    document = _read_document(args.input)
    if not isinstance(document, dict):
        _fail("check expects a JSON object")
    matrix = quiver = swp = None
    if "rows" in document:
        matrix = matrix_from_json(document)
    if "matrix" in document:
        matrix = matrix_from_json(document["matrix"])
    if "weights" in document and "arrows" in document:
        quiver = quiver_from_json(document)
    if "quiver" in document:
        quiver = quiver_from_json(document["quiver"])
    if "potential" in document:
        swp = swp_from_json(document)
    if "sp" in document:
        swp = swp_from_json(document["sp"])
    prime = args.prime
    if prime is None and isinstance(document.get("prime"), int) and swp is None:
        prime = document["prime"]
    problems = compatibility_report(matrix=matrix, quiver=quiver, prime=prime, swp=swp)
    if args.json:
        _emit_json({"ok": not problems, "problems": problems})
    else:
        for problem in problems:
            print("problem: %s" % problem)
        if not problems:
            print("ok")
    return 1 if problems else 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_input(parser) -> None:
    parser.add_argument("--input", default="-",
                        help="path of the JSON input document, or - for stdin")
    parser.add_argument("--json", action="store_true",
                        help="write a JSON document instead of a summary")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spwp",
        description="mutation workbench for matrices, weighted quivers "
                    "and species with potentials")
    try:
        version = metadata.version("spwp")
    except metadata.PackageNotFoundError:
        version = "unknown"
    parser.add_argument("--version", action="version", version="spwp " + version)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate-matrix", help="mutate a skew-symmetrizable matrix")
    _add_input(p)
    p.add_argument("--seq", required=True, help="comma-separated vertices, e.g. 3,1,2")
    p.set_defaults(func=cmd_mutate_matrix)

    p = sub.add_parser("mutate-quiver", help="mutate a weighted quiver")
    _add_input(p)
    p.add_argument("--seq", required=True)
    p.set_defaults(func=cmd_mutate_quiver)

    p = sub.add_parser("mutate-sp", help="mutate a species with potential")
    _add_input(p)
    p.add_argument("--seq", required=True)
    p.set_defaults(func=cmd_mutate_sp)

    p = sub.add_parser("search", help="search for a potential that stays "
                                      "non-degenerate along a sequence")
    _add_input(p)
    p.add_argument("--seq", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--budget", type=int, default=100,
                   help="random draws per extension degree (default 100)")
    p.add_argument("--seed", default="0")
    p.add_argument("--max-ext", type=int, default=7,
                   help="largest scalar extension degree to try (default 7)")
    p.add_argument("--max-cycle-length", type=int, default=None,
                   help="longest cycle used in random potentials")
    p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check", help="report compatibility problems in a bundle")
    _add_input(p)
    p.add_argument("--prime", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("serve", help="run the HTTP explorer service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", default=None,
                   help="directory of frontend assets to serve at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
