"""Command-line interface.

Exit codes: 0 success or equilibrium, 1 corpus failure, 2 input error,
3 no selection, 4 step limit reached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dynamics import load_scenario, run
from .entailment import entails, load_corpus, run_corpus
from .errors import LogicError
from .formula import parse_formula, parse_premise_expr, parse_premise_lines, print_formula
from .kernel import ConnectiveTable, LogicSystem, load_system, valuate

EXIT_OK = 0
EXIT_CORPUS_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_NO_SELECTION = 3
EXIT_STEP_LIMIT = 4

_STATUS_EXIT = {"equilibrium": EXIT_OK, "no-selection": EXIT_NO_SELECTION, "step-limit": EXIT_STEP_LIMIT}


class InputError(Exception):
    pass


def resolve_system(name: str) -> LogicSystem:
    """Find a system file: as given, then on ``MVLOGIC_SYSTEM_PATH``, then bundled."""
    path = Path(name)
    if not path.exists():
        for d in filter(None, os.environ.get("MVLOGIC_SYSTEM_PATH", "").split(os.pathsep)):
            for candidate in (Path(d) / name, Path(d) / f"{name}.json"):
                if candidate.exists():
                    path = candidate
                    break
            if path.exists():
                break
    try:
        return load_system(path)
    except FileNotFoundError:
        raise InputError(f"system not found: {name}") from None


def render_table(table: ConnectiveTable) -> str:
    """Plain-text grid; binary tables put the first argument on the rows."""
    values = table.input_domain.values
    if table.arity == 2:
        header = [table.name] + list(values)
        body = [[a] + [table(a, b) for b in values] for a in values]
    else:
        header = [" ".join(f"x{i}" for i in range(1, table.arity + 1)), table.name]
        body = [[" ".join(k), v] for k, v in table.rows.items()]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]

    def fmt(row):
        cells = [c.ljust(w) for c, w in zip(row, widths)]
        return (cells[0] + " | " + " ".join(cells[1:])).rstrip()

    rule = "-" * (widths[0] + 1) + "+" + "-" * (sum(widths[1:]) + len(widths) - 1)
    return "\n".join([fmt(header), rule] + [fmt(r) for r in body])


def cmd_truthtable(args) -> int:
    system = resolve_system(args.system)
    table = system.connective(args.connective)
    if args.format == "json":
        print(json.dumps(table.to_dict(full=True), ensure_ascii=False, indent=2))
    else:
        print(render_table(table))
    return EXIT_OK


def _parse_assignments(items) -> dict[str, str]:
    out = {}
    for item in items:
        atom, sep, value = item.partition("=")
        if not sep or not atom or not value:
            raise InputError(f"assignment must look like atom=value, not {item!r}")
        out[atom.strip()] = value.strip()
    return out


def cmd_eval(args) -> int:
    system = resolve_system(args.system)
    formula = parse_formula(args.formula, system)
    value = valuate(system, formula, _parse_assignments(args.assign))
    if args.format == "json":
        print(json.dumps({"formula": print_formula(formula), "value": value}, ensure_ascii=False))
    else:
        print(value)
    return EXIT_OK


def cmd_entail(args) -> int:
    system = resolve_system(args.system)
    try:
        text = Path(args.premises).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None
    gamma = parse_premise_lines(text, system)
    conclusion = parse_premise_expr(args.conclusion, system)
    result = entails(gamma, conclusion, system)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "verdict": result.verdict,
                    "counterexample": result.counterexample.as_dict() if result.counterexample else None,
                    "visited": result.visited,
                },
                ensure_ascii=False,
            )
        )
    else:
        print(result)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        scenario = load_scenario(args.scenario, flags=args.flag or ())
    except FileNotFoundError:
        raise InputError(f"scenario not found: {args.scenario}") from None
    trace = run(scenario, step_limit=args.step_limit)
    if args.trace_json:
        Path(args.trace_json).write_text(trace.to_json() + "\n", encoding="utf-8")
    if args.format == "json":
        print(trace.to_json())
    else:
        print("\n".join(trace.lines()))
    return _STATUS_EXIT[trace.status]


def cmd_corpus(args) -> int:
    system = resolve_system(args.system)
    try:
        entries = load_corpus(args.corpus)
    except OSError as exc:
        raise InputError(f"corpus not readable: {exc}") from None
    report = run_corpus(system, entries, filter=args.filter)
    if args.format == "json":
        print(json.dumps(report.to_dict(), ensure_ascii=False, indent=2))
    else:
        print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_CORPUS_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvlogic", description="Many-valued logic systems and belief dynamics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("truthtable", help="print a connective's table")
    p.add_argument("system")
    p.add_argument("connective")
    add_format(p)
    p.set_defaults(func=cmd_truthtable)

    p = sub.add_parser("eval", help="value a formula under an interpretation")
    p.add_argument("system")
    p.add_argument("formula")
    p.add_argument("assign", nargs="*", metavar="atom=value")
    add_format(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("entail", help="check a premise file against a conclusion")
    p.add_argument("system")
    p.add_argument("premises", help="file with one premise per line")
    p.add_argument("conclusion")
    add_format(p)
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("simulate", help="run a belief-dynamics scenario")
    p.add_argument("scenario")
    p.add_argument("--trace-json", metavar="PATH")
    p.add_argument("--step-limit", type=int)
    p.add_argument("--seed", type=int, help="reserved for randomized environments; currently unused")
    p.add_argument("--flag", action="append", help="apply a named overlay from the scenario file")
    add_format(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("corpus", help="run the bundled inference corpus")
    p.add_argument("system", nargs="?", default="svl")
    p.add_argument("--corpus", help="alternative corpus file")
    p.add_argument("--filter", help="only run entries whose name contains this text")
    add_format(p)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "step_limit", None) is not None and args.step_limit < 1:
        parser.error("--step-limit must be at least 1")
    try:
        return args.func(args)
    except (InputError, LogicError, OSError) as exc:
        print(f"mvlogic: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
