"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 an honest resource failure
(fuel ran out, a carry never settled, a cycle hit the window edge), 3 a
structural impossibility (no inverse exists, a point has no preimage).
NoPreimage must be tested before FuelExhausted since it is one.

Output is deterministic byte for byte: all randomness is seeded, JSON is
rendered with sorted keys, text values use a fixed layout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .errors import (
    DEFAULT_FUEL,
    BadOrder,
    FuelExhausted,
    NatPermError,
    NoInverse,
    NoPreimage,
    ParseError,
    Unresolved,
)
from .group import Permutation, adjacent_transposition, compose, identity, transposition
from .metric import distance
from .rearrange import Rearrangement, cycle_decomposition
from .report import approximation_report, density_report, orbit_report
from .rotation import BinarySeq, orbit
from .sets import NatSet, TailMachine, image_under, parse_set_spec, tm_tail_membership


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so errors map to exit 1."""

    def error(self, message):
        raise ParseError(message)


def _points_range(text: str) -> range:
    head, sep, tail = text.partition("..")
    if not sep or not head.isdigit() or not tail.isdigit():
        raise argparse.ArgumentTypeError(
            f"points must look like a..b with naturals a <= b, got {text!r}"
        )
    a, b = int(head), int(tail)
    if a > b:
        raise argparse.ArgumentTypeError(f"empty-to-negative range {text!r}")
    return range(a, b)


def parse_perm_spec(text: str, fuel: int = DEFAULT_FUEL) -> Permutation:
    """identity | adjacent:<k> | transpose:<i>,<j> | rearrange:<set-spec>.

    Anything else is read as a bare set spec and rearranged, so plain
    `even` works where a permutation is expected.
    """
    if text == "identity":
        return identity()
    head, sep, tail = text.partition(":")
    if sep and head == "adjacent":
        try:
            return adjacent_transposition(int(tail))
        except ValueError as exc:
            raise ParseError(f"bad adjacent position {tail!r}") from exc
    if sep and head == "transpose":
        parts = tail.split(",")
        try:
            i, j = (int(p) for p in parts)
        except ValueError as exc:
            raise ParseError(f"transpose needs two naturals, got {tail!r}") from exc
        try:
            return transposition(i, j)
        except BadOrder as exc:
            raise ParseError(str(exc)) from exc
    if sep and head == "rearrange":
        return Rearrangement(parse_set_spec(tail), fuel).as_permutation()
    return Rearrangement(parse_set_spec(text), fuel).as_permutation()


def parse_point_spec(text: str) -> BinarySeq:
    """zero | golden | bits:<01 string> | rational:<p>/<q>."""
    if text == "zero":
        return BinarySeq.zero()
    if text == "golden":
        return BinarySeq.golden()
    head, sep, tail = text.partition(":")
    if sep and head == "bits":
        try:
            return BinarySeq.from_bits(tail)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if sep and head == "rational":
        num, slash, den = tail.partition("/")
        if not slash or not num.isdigit() or not den.isdigit():
            raise ParseError(f"rational points look like rational:p/q, got {text!r}")
        try:
            return BinarySeq.from_fraction(int(num), int(den))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown point spec {text!r}")


def _parse_finite_list(text: str) -> List[int]:
    if text == "":
        return []
    parts = text.split(",")
    if not all(p.isdigit() for p in parts):
        raise ParseError(f"finite part must be naturals, got {text!r}")
    return [int(p) for p in parts]


def _build_parser() -> _Parser:
    parser = _Parser(prog="natperm")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def add(name):
        # Per-verb so the flag may trail the verb, where users type it.
        sub = verbs.add_parser(name)
        sub.add_argument("--format", choices=["text", "json"], default="text")
        return sub

    for name in ("eval", "inverse"):
        sub = add(name)
        sub.add_argument("--set", required=True)
        sub.add_argument("--points", type=_points_range, required=True)
        sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    sub = add("cycles")
    sub.add_argument("--set", required=True)
    sub.add_argument("--bound", type=int, required=True)

    sub = add("compose")
    sub.add_argument("--lhs", required=True)
    sub.add_argument("--rhs", required=True)
    sub.add_argument("--points", type=_points_range, required=True)
    sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    sub = add("metric")
    sub.add_argument("--lhs", required=True)
    sub.add_argument("--rhs", required=True)
    sub.add_argument("--depth", type=int, required=True)
    sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    sub = add("xor")
    sub.add_argument("--lhs", required=True)
    sub.add_argument("--rhs", required=True)
    sub.add_argument("--prefix", type=int, required=True)

    sub = add("image")
    sub.add_argument("--perm", required=True)
    sub.add_argument("--set", required=True)
    sub.add_argument("--prefix", type=int, required=True)
    sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    sub = add("density")
    sub.add_argument("--set", required=True)
    sub.add_argument("--prefix", type=int, required=True)

    sub = add("orbit")
    sub.add_argument("--p0", required=True)
    sub.add_argument("--beta", required=True)
    sub.add_argument("--count", type=int, required=True)
    sub.add_argument("--digits", type=int, required=True)
    sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL)

    sub = add("tm-tail")
    sub.add_argument("--boundary", type=int, required=True)
    sub.add_argument("--finite", required=True)
    sub.add_argument("--input", type=int, required=True)

    sub = add("report")
    sub.add_argument("--kind", choices=["orbit", "density", "approximation"],
                     required=True)
    sub.add_argument("--out", required=True)
    sub.add_argument("--set")
    sub.add_argument("--prefix", type=int)
    sub.add_argument("--p0")
    sub.add_argument("--beta")
    sub.add_argument("--count", type=int)
    sub.add_argument("--digits", type=int)
    sub.add_argument("--max-n", type=int, dest="max_n")
    sub.add_argument("--depth", type=int, default=128)
    sub.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    return parser


def _require(args, names):
    for name in names:
        if getattr(args, name) is None:
            flag = "--" + name.replace("_", "-")
            raise ParseError(f"report --kind {args.kind} needs {flag}")


def _dispatch(args) -> object:
    """Run one verb; returns (text_lines, json_obj)."""
    if args.verb in ("eval", "inverse"):
        sigma = Rearrangement(parse_set_spec(getattr(args, "set")), args.fuel)
        fn = sigma.apply if args.verb == "eval" else sigma.preimage
        values = [fn(n) for n in args.points]
        return " ".join(str(v) for v in values), {"values": values}

    if args.verb == "cycles":
        decomp = cycle_decomposition(parse_set_spec(getattr(args, "set")), args.bound)
        obj = {
            "bound": decomp.bound,
            "cycles": [[c.first, c.last] for c in decomp.cycles],
            "unresolved": None if decomp.unresolved is None else decomp.unresolved.start,
        }
        return str(decomp), obj

    if args.verb == "compose":
        lhs = parse_perm_spec(args.lhs, args.fuel)
        rhs = parse_perm_spec(args.rhs, args.fuel)
        combined = compose(lhs, rhs)
        values = [combined.apply(n) for n in args.points]
        return " ".join(str(v) for v in values), {"values": values}

    if args.verb == "metric":
        lhs = parse_perm_spec(args.lhs, args.fuel)
        rhs = parse_perm_spec(args.rhs, args.fuel)
        value = distance(lhs, rhs, args.depth)
        return value.text(), value.json_obj()

    if args.verb == "xor":
        combined = parse_set_spec(args.lhs) ^ parse_set_spec(args.rhs)
        bits = combined.char_prefix(args.prefix)
        return bits, {"prefix": bits}

    if args.verb == "image":
        perm = parse_perm_spec(args.perm, args.fuel)
        base = parse_set_spec(getattr(args, "set"))
        bits = image_under(perm, base).char_prefix(args.prefix)
        return bits, {"prefix": bits}

    if args.verb == "density":
        value = parse_set_spec(getattr(args, "set")).density(args.prefix)
        text = f"{value.numerator}/{value.denominator}"
        return text, {"density": text}

    if args.verb == "orbit":
        points = orbit(
            parse_point_spec(args.p0),
            parse_point_spec(args.beta),
            args.count,
            args.digits,
            args.fuel,
        )
        lines = ["".join(str(b) for b in p) for p in points]
        return "\n".join(lines), {"points": lines}

    if args.verb == "tm-tail":
        try:
            machine = TailMachine(args.boundary, frozenset(_parse_finite_list(args.finite)))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        bit = tm_tail_membership(machine, args.input)
        return str(bit), {"member": bit}

    if args.verb == "report":
        if args.kind == "orbit":
            _require(args, ["p0", "beta", "count", "digits"])
            paths = orbit_report(
                args.out,
                parse_point_spec(args.p0),
                parse_point_spec(args.beta),
                args.count,
                args.digits,
                args.fuel,
            )
        elif args.kind == "density":
            _require(args, ["set", "prefix"])
            paths = density_report(
                args.out, parse_set_spec(getattr(args, "set")), args.prefix
            )
        else:
            _require(args, ["set", "max_n"])
            paths = approximation_report(
                args.out,
                parse_set_spec(getattr(args, "set")),
                args.max_n,
                args.depth,
            )
        return "\n".join(paths), {"files": paths}

    raise ParseError(f"unknown verb {args.verb!r}")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        text, obj = _dispatch(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (NoPreimage, NoInverse) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FuelExhausted, Unresolved) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NatPermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
