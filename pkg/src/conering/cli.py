"""Command-line entry point: ``conering <command> ...``.

Exit codes: 0 success, 1 computational finding (failed verify check, or a
nonempty scan with ``--strict``), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, cd_ring, rank_basis
from .counting_basis import (
    NonInvertibleChangeOfBasis,
    betti_coordinates,
    convert,
    counting_cone,
    negativity_scan,
    structure_table,
)
from .element import BASES, CD, COUNTING, RANK, RingElement, format_key, parse_element
from .suites import SUITES, run_suite
from .tables_io import write_report, write_table


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _element(text: str, basis: str | None) -> RingElement:
    try:
        return parse_element(text, basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _emit(elem: RingElement, as_json: bool) -> str:
    if not as_json:
        return str(elem)
    terms = [[format_key(k, elem.basis), c] for k, c in elem.sorted_items()]
    return json.dumps({"basis": elem.basis, "element": str(elem), "terms": terms})


def _cmd_mul(args) -> int:
    x = _element(args.left, args.basis)
    y = _element(args.right, args.basis if args.basis else x.basis)
    print(_emit(x * y, args.json))
    return 0


def _cmd_cone(args) -> int:
    x = _element(args.elem, args.basis)
    if x.basis == CD:
        out = cd_ring.cone(x)
    elif x.basis == RANK:
        out = rank_basis.rank_cone(x)
    else:
        out = counting_cone(x)
    print(_emit(out, args.json))
    return 0


def _cmd_join(args) -> int:
    x = _element(args.left, CD)
    y = _element(args.right, CD)
    print(_emit(cd_ring.join(x, y), args.json))
    return 0


def _cmd_convert(args) -> int:
    x = _element(args.elem, args.source)
    print(_emit(convert(x, args.target), args.json))
    return 0


def _cmd_dims(args) -> int:
    dims = [len(cd_ring.enumerate_words(d)) for d in range(args.max_degree + 1)]
    if args.json:
        print(json.dumps({"max_degree": args.max_degree, "dims": dims}))
    else:
        print(" ".join(map(str, dims)))
    return 0


def _cmd_table(args) -> int:
    table = structure_table(args.basis, args.max_degree)
    out = write_table(table, args.out, as_json=args.json)
    print(f"wrote {out.path} ({len(table.products)} products, {len(table.cones)} cones) {out.checksum}")
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, args.max_degree)
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 0 if report.passed else 1


def _cmd_scan(args) -> int:
    report = negativity_scan(args.max_degree)
    if args.out:
        write_report(report, args.out, as_json=args.json)
        print(f"wrote {args.out} ({len(report.negatives)} negative coefficients)")
    else:
        sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 1 if args.strict and report.negatives else 0


def _cmd_betti(args) -> int:
    x = _element(args.elem, None)
    try:
        coords = betti_coordinates(x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps({"degree": x.degree(), "coordinates": [[format_key(k, COUNTING), c] for k, c in coords]}))
    else:
        for k, c in coords:
            print(f"{format_key(k, COUNTING)} {c}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conering", description="Exact arithmetic in the flag-vector cone-product ring.")
    parser.add_argument("--version", action="version", version=f"conering {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = command("mul", _cmd_mul, "product of two elements")
    p.add_argument("--basis", choices=BASES)
    p.add_argument("left")
    p.add_argument("right")

    p = command("cone", _cmd_cone, "cone of an element")
    p.add_argument("--basis", choices=BASES)
    p.add_argument("elem")

    p = command("join", _cmd_join, "J(U, V) in the CD basis")
    p.add_argument("left")
    p.add_argument("right")

    p = command("convert", _cmd_convert, "change of basis")
    p.add_argument("--from", dest="source", choices=BASES, required=True)
    p.add_argument("--to", dest="target", choices=BASES, required=True)
    p.add_argument("elem")

    p = command("dims", _cmd_dims, "dimension of each graded piece")
    p.add_argument("--max-degree", type=_nonneg, required=True)

    p = command("table", _cmd_table, "write a structure-coefficient table")
    p.add_argument("--basis", choices=BASES, required=True)
    p.add_argument("--max-degree", type=_nonneg, required=True)
    p.add_argument("--out", required=True)

    p = command("verify", _cmd_verify, "run an identity suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-degree", type=_nonneg, required=True)

    p = command("scan", _cmd_scan, "list negative counting-basis structure coefficients")
    p.add_argument("--max-degree", type=_nonneg, required=True)
    p.add_argument("--out")
    p.add_argument("--strict", action="store_true", help="exit 1 if any negative is found")

    p = command("betti", _cmd_betti, "counting-basis coordinates of a homogeneous element")
    p.add_argument("elem")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"conering: error: {exc}", file=sys.stderr)
        return 2
    except NonInvertibleChangeOfBasis as exc:
        print(f"conering: finding: change of basis not invertible over Z: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
