"""Command-line interface.

Subcommands mirror the library: shuffle membership, square decisions,
reduction building, 3-Partition solving, end-to-end verification, and
arc diagrams.  String arguments are compact-encoded by default (see
`encoding`); `--tokens` switches to whitespace-separated tokens.  An
argument of the form `@path` is read from that file, `-` from stdin.

Exit codes: 0 = yes / success, 1 = no, 2 = usage or parse error,
3 = undecided within budget.  All output is byte-deterministic for a
given invocation; diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import arcs
from .core import Matching, Str, validate_matching
from .encoding import encode_compact, parse_strings, try_encode_compact
from .errors import SquareShuffleError
from .partition import solve as solve_partition
from .qautomaton import DEFAULT_BUDGET
from .reduction import (
    build_reduction,
    parse_instance,
    synthesize_witness,
    verify_reduction_instance,
)
from .shuffle import shuffle_witness
from .square import NO, UNKNOWN, YES, SquareVerdict, is_square

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


def _read_arg(value: str) -> str:
    """Resolve @file / - / literal argument forms."""
    if value == "-":
        return sys.stdin.read().rstrip("\n")
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as fh:
            return fh.read().rstrip("\n")
    return value


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _str_json(s: Str) -> object:
    compact = try_encode_compact(s)
    return compact if compact is not None else list(s.tokens())


def _verdict_json(v: SquareVerdict) -> str:
    obj: dict = {"decision": v.decision, "method": v.method}
    if v.witness is not None:
        u, matching = v.witness
        obj["u"] = _str_json(u)
        obj["matching"] = [list(p) for p in matching.pairs]
    return json.dumps(obj)


def _decision_exit(decision: str) -> int:
    return {YES: EXIT_YES, NO: EXIT_NO, UNKNOWN: EXIT_UNDECIDED}[decision]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_shuffle(args: argparse.Namespace) -> int:
    u, v, w = parse_strings(
        [_read_arg(args.u), _read_arg(args.v), _read_arg(args.w)], tokens=args.tokens
    )
    witness = shuffle_witness(u, v, w)
    if witness is None:
        _emit(json.dumps({"decision": "no"}) + "\n", args.out)
        return EXIT_NO
    _emit(
        json.dumps({"decision": "yes", "labels": list(witness.labels)}) + "\n",
        args.out,
    )
    return EXIT_YES


def _square_line(payload: tuple[str, bool, str, int]) -> tuple[str, int]:
    text, tokens, method, budget = payload
    try:
        (w,) = parse_strings([text], tokens=tokens)
        verdict = is_square(w, method=method, budget=budget)
        return _verdict_json(verdict), _decision_exit(verdict.decision)
    except SquareShuffleError as exc:
        return json.dumps({"error": str(exc)}), EXIT_USAGE


def cmd_square(args: argparse.Namespace) -> int:
    if args.batch:
        if args.batch == "-":
            raw = sys.stdin.read()
        else:
            with open(args.batch, "r", encoding="utf-8") as fh:
                raw = fh.read()
        lines = [line for line in raw.splitlines() if line.strip()]
        payloads = [(line, args.tokens, args.method, args.budget) for line in lines]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_square_line, payloads))
        else:
            results = [_square_line(p) for p in payloads]
        _emit("".join(line + "\n" for line, _code in results), args.out)
        codes = {code for _line, code in results}
        if EXIT_USAGE in codes:
            return EXIT_USAGE
        if EXIT_UNDECIDED in codes:
            return EXIT_UNDECIDED
        return EXIT_YES
    if args.w is None:
        print("error: provide a string or --batch FILE", file=sys.stderr)
        return EXIT_USAGE
    line, code = _square_line((_read_arg(args.w), args.tokens, args.method, args.budget))
    if code == EXIT_USAGE:
        print(line, file=sys.stderr)
        return code
    _emit(line + "\n", args.out)
    return code


def cmd_reduce(args: argparse.Namespace) -> int:
    inst = parse_instance(_read_arg(args.instance))
    built = build_reduction(inst)
    _emit(encode_compact(built.w) + "\n", args.out)
    if args.emit_spans:
        spans = [{"name": s.name, "start": s.start, "end": s.end} for s in built.spans]
        with open(args.emit_spans, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(spans, indent=2) + "\n")
    if args.emit_witness:
        sol = solve_partition(inst)
        if sol is None:
            print("instance is unsolvable; no witness emitted", file=sys.stderr)
            return EXIT_NO
        trace = synthesize_witness(inst, sol)
        with open(args.emit_witness, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(trace.to_text())
    return EXIT_YES


def cmd_solve3p(args: argparse.Namespace) -> int:
    inst = parse_instance(_read_arg(args.instance))
    sol = solve_partition(inst)
    if sol is None:
        _emit(json.dumps({"solvable": False, "target": inst.target}) + "\n", args.out)
        return EXIT_NO
    obj = {
        "solvable": True,
        "target": inst.target,
        "values": list(inst.values),
        "groups": [list(g) for g in sol.groups],
    }
    _emit(json.dumps(obj) + "\n", args.out)
    return EXIT_YES


def cmd_verify(args: argparse.Namespace) -> int:
    inst = parse_instance(_read_arg(args.instance))
    report = verify_reduction_instance(inst, budget=args.budget)
    obj = {
        "values": list(inst.values),
        "group_count": inst.group_count,
        "target": inst.target,
        "string_length": report.string_length,
        "solvable": report.solvable,
        "witness_valid": report.witness_valid,
        "search": {
            "decision": report.search.decision,
            "visited": report.search.visited,
            "complete": report.search.complete,
        },
        "agreement": report.agreement,
    }
    _emit(json.dumps(obj) + "\n", args.out)
    if report.agreement in ("confirmed-yes", "confirmed-by-witness"):
        return EXIT_YES
    if report.agreement in ("confirmed-no", "consistent-with-no"):
        return EXIT_NO
    return EXIT_UNDECIDED


def cmd_arcs(args: argparse.Namespace) -> int:
    (w,) = parse_strings([_read_arg(args.w)], tokens=args.tokens)
    matching = Matching.from_json(_read_arg(args.matching))
    report = validate_matching(w, matching)
    if not report.ok:
        print(
            f"matching invalid: {report.violation} violation at {report.offenders}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    renderer = {"ascii": arcs.render_ascii, "dot": arcs.render_dot, "svg": arcs.render_svg}
    _emit(renderer[args.format](w, matching), args.out)
    return EXIT_YES


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squareshuffle",
        description="Shuffle membership, square-shuffle decisions, and the "
        "3-Partition reduction toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tokens", action="store_true", help="parse strings as whitespace-separated tokens")
        p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = sub.add_parser("shuffle", help="decide w = u interleaved with v")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("w")
    add_common(p)
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("square", help="decide whether w is a square shuffle")
    p.add_argument("w", nargs="?", help="the string (omit when using --batch)")
    p.add_argument("--method", choices=["auto", "brute", "search", "two-sat"], default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search config budget")
    p.add_argument("--batch", metavar="FILE", help="decide every nonempty line of FILE ('-' = stdin)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for --batch")
    add_common(p)
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("reduce", help="build the reduction string for a 3-Partition instance")
    p.add_argument("instance", help="instance file (@file, -, or literal text)")
    p.add_argument("--emit-witness", metavar="FILE", help="also write an accepting trace (needs a solvable instance)")
    p.add_argument("--emit-spans", metavar="FILE", help="also write the named spans as JSON")
    add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve3p", help="solve a 3-Partition instance exactly")
    p.add_argument("instance")
    add_common(p)
    p.set_defaults(func=cmd_solve3p)

    p = sub.add_parser("verify", help="cross-check solver, witness, and search on an instance")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("arcs", help="render a matching as an arc diagram")
    p.add_argument("w")
    p.add_argument("matching", help="matching JSON (@file, -, or literal)")
    p.add_argument("--format", choices=["ascii", "dot", "svg"], default="ascii")
    add_common(p)
    p.set_defaults(func=cmd_arcs)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except SquareShuffleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
