"""Command-line front-end: ``gf2iter {multiply,simulate,cost,export-schedule}``.

Exit status is 0 on success, 2 for usage errors (bad flags, malformed hex,
unsupported method/segment combinations, oversized operands) and 1 when a
computation or I/O step fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import datapath
from .field import reduce
from .multipliers import METHODS, SEGMENTS, get_multiplier
from .poly import Gf2Poly, HexParseError, format_hex, parse_hex
from .recursive import PAPER_STRATEGIES
from .schedule import (
    build_decomposition,
    canonical_4segment_schedule,
    cost_report,
    dumps_schedule,
    paper_schedule,
    xor_count_separate,
)


class UsageError(Exception):
    pass


def read_operand(source: str) -> Gf2Poly:
    """Hex literal, or path to a file holding one."""
    text = source
    if not source.lower().startswith("0x"):
        path = Path(source)
        if not path.is_file():
            raise UsageError(f"operand {source!r} is neither a 0x literal nor a readable file")
        text = path.read_text().strip()
    try:
        return parse_hex(text)
    except HexParseError as exc:
        raise UsageError(f"bad operand: {exc}") from None


def _family(method: str) -> str:
    return method.split("-", 1)[1]


def _check_config(args, iterative_only=False):
    method = args.method
    if iterative_only and not method.startswith("iter-"):
        raise UsageError(f"{args.command} needs an iterative method (iter-karatsuba or iter-bailey)")
    if method.startswith("iter-") and args.segments is None:
        raise UsageError(f"{method} needs --segments")
    if method == "schoolbook" and args.segments is not None:
        raise UsageError("schoolbook takes no --segments")
    if args.segments is not None and method != "schoolbook":
        allowed = SEGMENTS[_family(method)]
        if args.segments not in allowed:
            raise UsageError(f"{method} supports --segments {'/'.join(map(str, allowed))}, not {args.segments}")
    if getattr(args, "canonical", False) and (method, args.segments) != ("iter-karatsuba", 4):
        raise UsageError("--canonical only exists for --method iter-karatsuba --segments 4")


def _operands(args) -> tuple[Gf2Poly, Gf2Poly]:
    ops = []
    for name, src in (("A", args.a), ("B", args.b)):
        p = read_operand(src)
        if p.degree >= args.width:
            raise UsageError(f"operand {name} has {p.degree + 1} bits, configuration width is {args.width}")
        ops.append(p.resized(args.width))
    return ops[0], ops[1]


def _schedule(args):
    if getattr(args, "canonical", False):
        return canonical_4segment_schedule(), PAPER_STRATEGIES[("karatsuba", 4)]
    return paper_schedule(_family(args.method), args.segments)


def cmd_multiply(args, out) -> int:
    _check_config(args)
    a, b = _operands(args)
    product = get_multiplier(args.method, args.segments)(a, b)
    if args.reduce:
        if a.degree >= 233 or b.degree >= 233:
            raise UsageError("--reduce needs operands below x^233")
        product = reduce(product)
    if args.format == "json":
        out.write(json.dumps({"method": args.method, "segments": args.segments, "reduced": args.reduce,
                              "product": format_hex(product)}) + "\n")
    else:
        out.write(format_hex(product) + "\n")
    return 0


def cmd_simulate(args, out) -> int:
    _check_config(args, iterative_only=True)
    a, b = _operands(args)
    schedule, strategy = _schedule(args)
    state = datapath.load(a, b, schedule, strategy.base_width, record=True)
    datapath.run(state)
    out.write(datapath.trace(state))
    out.write(datapath.summary_line(state) + "\n")
    return 0


def cmd_cost(args, out) -> int:
    _check_config(args, iterative_only=True)
    schedule, strategy = _schedule(args)
    report = cost_report(schedule).as_dict()
    if args.separate:
        _, table = build_decomposition(strategy)
        report["xor_ops"] = xor_count_separate(table)
    out.write(json.dumps(report) + "\n")
    return 0


def cmd_export_schedule(args, out) -> int:
    _check_config(args, iterative_only=True)
    schedule, _ = _schedule(args)
    text = dumps_schedule(schedule)
    if args.output in (None, "-"):
        out.write(text)
    else:
        Path(args.output).write_text(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gf2iter", description="Iterative Karatsuba/Bailey multipliers over GF(2)[x].")
    sub = parser.add_subparsers(dest="command", required=True)

    def method_args(p, operands=True):
        p.add_argument("--method", choices=METHODS, default="schoolbook" if operands else None,
                       required=not operands)
        p.add_argument("--segments", type=int)
        if operands:
            p.add_argument("--width", type=int, default=233, help="maximum operand width in bits (default 233)")
            p.add_argument("a", help="first operand: 0x literal or file")
            p.add_argument("b", help="second operand: 0x literal or file")

    p = sub.add_parser("multiply", help="print the product in hex")
    method_args(p)
    p.add_argument("--reduce", action="store_true", help="reduce modulo x^233 + x^74 + 1")
    p.add_argument("--format", choices=("hex", "json"), default="hex")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("simulate", help="clock-by-clock datapath trace")
    method_args(p)
    p.add_argument("--canonical", action="store_true", help="use the published 4-segment schedule")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("cost", help="partial multiplications, XORs and clocks as JSON")
    method_args(p, operands=False)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--separate", action="store_true", help="count XORs with every segment accumulated on its own")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("export-schedule", help="write a schedule as JSON")
    method_args(p, operands=False)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("-o", "--output", help="output file (default: standard output)")
    p.set_defaults(func=cmd_export_schedule)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"gf2iter {args.command}: {exc}\n")
        return 2
    except (ValueError, OSError, datapath.SimulatorError) as exc:
        err.write(f"gf2iter {args.command}: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
