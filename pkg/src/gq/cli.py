"""Command line entry point ``gq``.

    gq eval "<expr>"            evaluate one program (statements separated by ';')
    gq repl                     interactive session with ``let`` bindings
    gq batch FILE.json          JSON array of programs in, JSON array of results out
    gq oracle --seed S --trials T
                                symbolic-vs-numeric cross validation

Global flags: ``--order N`` (truncation order used by ``/``, ``invert``,
``sqrt``...; default 8) and ``--json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from gq import __version__, oracle
from gq.config import DEFAULT_ORDER, set_order
from gq.errors import GQError
from gq.expr import EvalError, ParseError, default_env, format_value, run, value_to_json


def _error_json(exc: GQError) -> dict:
    if isinstance(exc, EvalError):
        return {"name": exc.name, "message": str(exc), "meaning": exc.meaning}
    return {"name": type(exc).__name__, "message": str(exc), "meaning": exc.meaning}


def execute(text: str, env: Optional[dict] = None) -> dict:
    """Run one program and package the outcome as a JSON-ready record."""
    env = default_env() if env is None else env
    try:
        value = run(text, env)
    except (EvalError, ParseError) as exc:
        return {"input": text, "ok": False, "error": _error_json(exc)}
    return {"input": text, "ok": True, "result": format_value(value), "value": value_to_json(value)}


def batch(commands: list) -> tuple[list[dict], int]:
    """Each command runs in its own copy of the default environment."""
    results = []
    for cmd in commands:
        text = cmd["expr"] if isinstance(cmd, dict) else str(cmd)
        results.append(execute(text, default_env()))
    status = 0 if all(r["ok"] for r in results) else 1
    return results, status


def repl(stdin=None, stdout=None, as_json: bool = False) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    interactive = stdin.isatty()
    env = default_env()
    status = 0
    while True:
        if interactive:
            stdout.write("gq> ")
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in (":q", ":quit", "quit", "exit"):
            break
        if line.startswith(":order"):
            try:
                set_order(Fraction(line.split()[1]))
                stdout.write(f"order = {line.split()[1]}\n")
            except (IndexError, ValueError) as exc:
                stdout.write(f"error: {exc}\n")
            continue
        record = execute(line, env)
        if as_json:
            stdout.write(json.dumps(record) + "\n")
        elif record["ok"]:
            stdout.write(record["result"] + "\n")
        else:
            status = 1
            err = record["error"]
            stdout.write(f"error: {err['message']}\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    common.add_argument("--order", type=Fraction, default=argparse.SUPPRESS,
                        help=f"truncation order N (default {DEFAULT_ORDER})")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    parser = argparse.ArgumentParser(prog="gq", parents=[common],
                                     description="Generalized numbers and quaternions calculator")
    parser.add_argument("--version", action="version", version=f"gq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p_eval.add_argument("expr")

    sub.add_parser("repl", parents=[common], help="interactive session")

    p_batch = sub.add_parser("batch", parents=[common], help="run a JSON array of commands")
    p_batch.add_argument("file", help="JSON file, or - for stdin")

    p_oracle = sub.add_parser("oracle", parents=[common], help="numeric cross validation")
    p_oracle.add_argument("--seed", type=int, default=42)
    p_oracle.add_argument("--trials", type=int, default=500)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.json = getattr(args, "json", False)
    if getattr(args, "order", None) is not None:
        set_order(args.order)

    if args.command == "eval":
        record = execute(args.expr)
        if args.json:
            print(json.dumps(record, indent=2))
        elif record["ok"]:
            print(record["result"])
        else:
            print(f"error: {record['error']['message']}", file=sys.stderr)
        return 0 if record["ok"] else 1

    if args.command == "repl":
        return repl(as_json=args.json)

    if args.command == "batch":
        if args.file == "-":
            commands = json.load(sys.stdin)
        else:
            with open(args.file) as fh:
                commands = json.load(fh)
        if not isinstance(commands, list):
            print("error: batch input must be a JSON array", file=sys.stderr)
            return 2
        results, status = batch(commands)
        print(json.dumps(results, indent=2))
        return status

    if args.command == "oracle":
        summary = oracle.cross_validate_suite(args.seed, args.trials)
        if args.json:
            print(json.dumps(summary.to_json(), indent=2))
        else:
            counts = summary.counts()
            print(f"seed {args.seed}, {args.trials} trials, {len(summary.comparisons)} checks: "
                  f"{counts['agree']} agree, {counts['inconclusive']} inconclusive, "
                  f"{counts['mismatch']} mismatches")
            for m in summary.mismatches:
                print(f"  trial {m.trial} {m.decision}: symbolic={m.symbolic} oracle={m.verdict} x={m.element}")
        return 0 if not summary.mismatches else 1

    return 2


if __name__ == "__main__":
    sys.exit(main())
