"""Command line front end.

Exit status: 0 success, 1 verification failure, 2 usage error, 3 oracle
enumeration limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional, Sequence, Tuple

from . import recurrence as rec
from .bipoly import BiPoly
from .board import FULL, PATH, VARIANTS, BoardSpec, board_stats, build_board
from .errors import OracleLimitError, ParameterError
from .identity import crosscheck_all
from .oracle import DEFAULT_LIMIT, frontier_count, unbreakable_count, weighted_count

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
METHODS = ("oracle", "system", "closed", "fib", "frontier")


class UsageError(Exception):
    pass


def parse_range(text: str, name: str) -> List[int]:
    """``"4"`` or inclusive ``"lo..hi"``."""
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise UsageError(f"--{name}: expected an integer or a range lo..hi, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise UsageError(f"--{name}: empty range {text!r}")
    return list(range(lo, hi + 1))


def parse_points(text: str) -> List[Tuple[int, int]]:
    points = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        m = re.fullmatch(r"\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?", chunk)
        if not m:
            raise UsageError(f"--points: cannot parse {chunk!r}; use \"(a,b);(a,b)\"")
        points.append((int(m.group(1)), int(m.group(2))))
    return points


def _single(values: List[int], name: str) -> int:
    if len(values) != 1:
        raise UsageError(f"--{name}: this command takes a single value, not a range")
    return values[0]


def _weights(args) -> Optional[Tuple[int, int]]:
    if args.method == "fib":
        if (args.a not in (None, 1)) or (args.b not in (None, 1)):
            raise UsageError("--method fib only exists at --a 1 --b 1")
        return 1, 1
    if (args.a is None) != (args.b is None):
        raise UsageError("give both --a and --b, or neither for symbolic output")
    if args.a is None:
        return None
    return args.a, args.b


def _limit(args) -> int:
    if args.limit is None:
        return DEFAULT_LIMIT
    if args.limit > DEFAULT_LIMIT and not args.allow_large:
        raise UsageError(f"--limit above {DEFAULT_LIMIT} needs --allow-large")
    return args.limit


def _render_value(value: BiPoly, weights, fmt: str, **meta) -> str:
    if weights is not None:
        plain = value.eval(*weights)
        if fmt == "json":
            return json.dumps({**meta, "a": weights[0], "b": weights[1], "value": str(plain)})
        return str(plain)
    if fmt == "json":
        return json.dumps({**meta, "value": value.to_json()})
    if fmt == "csv":
        raise UsageError("--format csv needs integer weights --a and --b")
    return str(value)


def _count_value(args, n: int, limit: int) -> BiPoly:
    unbroken = args.unbreakable
    if args.variant == PATH:
        spec = BoardSpec.path(args.m if args.m is not None else n)
    else:
        spec = BoardSpec(args.q, n, args.variant)
    if args.method == "oracle":
        g = build_board(spec)
        return unbreakable_count(g, limit=limit) if unbroken else weighted_count(g, limit=limit)
    if args.method == "frontier":
        if unbroken:
            raise UsageError("--method frontier does not count unbreakable tilings")
        return frontier_count(build_board(spec))
    if args.variant == PATH:
        if args.method != "closed":
            raise UsageError("path boards support --method oracle, frontier or closed")
        return rec.u(spec.m)
    if args.variant != FULL and (args.method != "system" or unbroken):
        raise UsageError(f"variant {args.variant} is only available with --method system or oracle")
    if args.method == "system":
        if unbroken:
            return rec.unbreakable_system_tables(args.q, max(n, 1))[0][n]
        tables = dict(zip("RABC", rec.system_tables(args.q, n)))
        return tables["R" if args.variant == FULL else args.variant][n]
    if args.method == "closed":
        if unbroken:
            if n == 0:
                return BiPoly(1)
            return rec.unbreakable_closed_table(args.q, n, args.mode)[n]
        return rec.closed_R_table(args.q, n)[n]
    if unbroken:
        if n == 0:
            return BiPoly(1)
        return rec.fib_unbreakable_table(args.q, n, args.mode)[n]
    return rec.fib_r_table(args.q, n)[n]


def cmd_board(args) -> str:
    n = _single(args.n, "n")
    spec = BoardSpec.path(args.m if args.m is not None else n) if args.variant == PATH else BoardSpec(args.q, n, args.variant)
    g = build_board(spec)
    if args.format == "json":
        return g.to_json()
    levels, edges, cuts = board_stats(g)
    if args.format == "csv":
        return ",".join(str(x) for x in (*levels, edges, cuts))
    lines = [f"cells: {levels[0]} on level 1, {levels[1]} on level 2", f"edges: {edges}", f"cut positions: {cuts}"]
    lines += [f"  {u} - {v}" for u, v in g.labelled_edges()]
    return "\n".join(lines)


def cmd_count(args) -> str:
    n = _single(args.n, "n")
    weights = _weights(args)
    value = _count_value(args, n, _limit(args))
    meta = {"q": args.q, "n": n, "variant": args.variant, "method": args.method}
    if args.unbreakable:
        meta["unbreakable"] = True
    return _render_value(value, weights, args.format, **meta)


def cmd_seq(args) -> str:
    weights = _weights(args)
    limit = _limit(args)
    values = [_count_value(args, n, limit) for n in args.n]
    if args.format == "csv":
        a, b = weights or (1, 1)
        return ",".join(str(v.eval(a, b)) for v in values)
    if args.format == "json":
        kind = "Rtilde" if args.unbreakable else "R"
        out = {"q": args.q, "kind": kind, "provenance": args.method, "n": [args.n[0], args.n[-1]]}
        if weights is None:
            out["values"] = [v.to_json() for v in values]
        else:
            out.update(a=weights[0], b=weights[1], values=[str(v.eval(*weights)) for v in values])
        return json.dumps(out)
    if weights is None:
        return "\n".join(f"{n}: {v}" for n, v in zip(args.n, values))
    return "\n".join(f"{n}: {v.eval(*weights)}" for n, v in zip(args.n, values))


def cmd_coeffs(args) -> str:
    q = _single(args.q_values, "q")
    if args.method == "fib":
        if (args.a not in (None, 1)) or (args.b not in (None, 1)):
            raise UsageError("--method fib only exists at --a 1 --b 1")
        names = ("alpha", "beta", "gamma", "delta")
        vals = rec.fib_coeffs(q)
        if args.format == "json":
            return json.dumps({"q": q, **dict(zip(names, vals))})
        if args.format == "csv":
            return ",".join(map(str, vals))
        return "\n".join(f"{k} = {v}" for k, v in zip(names, vals))
    if args.method == "system":
        c3, c2, c1, c0 = rec.characteristic_coeffs(rec.coefficient_matrix(q))
        cs = rec.CoeffSet(q, -c3, -c2, -c1, -c0)
    elif args.method == "closed":
        cs = rec.closed_coeffs(q)
    else:
        raise UsageError("coeffs supports --method closed, system or fib")
    weights = _weights(args)
    names = ("alpha", "beta", "gamma", "delta")
    if weights is not None:
        vals = cs.at(*weights)
        if args.format == "json":
            return json.dumps({"q": q, "a": weights[0], "b": weights[1], **{k: str(v) for k, v in zip(names, vals)}})
        if args.format == "csv":
            return ",".join(map(str, vals))
        return "\n".join(f"{k} = {v}" for k, v in zip(names, vals))
    if args.format == "json":
        return json.dumps(cs.to_dict())
    if args.format == "csv":
        raise UsageError("--format csv needs integer weights --a and --b")
    return "\n".join(f"{k} = {v}" for k, v in zip(names, cs.as_tuple()))


def cmd_verify(args) -> Tuple[str, int]:
    points = parse_points(args.points) if args.points else [(1, 1), (2, 1), (1, 2), (2, 3)]
    bundle = crosscheck_all(args.q_values, args.n, points, limit=_limit(args))
    if args.format == "text":
        text = "\n".join(r.line() for r in bundle)
        text += f"\noverall: {'PASS' if bundle.ok else 'FAIL'}"
    else:
        text = json.dumps(bundle.to_dict(), indent=2)
    return text, EXIT_OK if bundle.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mosaictile",
        description="Exact counts of square/domino tilings of (2 x n)-boards on the {4,q} mosaics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="text", q_range=False):
        p.add_argument("--q", dest="q_text", default="4", help="mosaic parameter q >= 4" + (" (or lo..hi)" if q_range else ""))
        p.add_argument("--n", dest="n_text", default="0", help="board length n, or lo..hi")
        p.add_argument("--a", type=int, help="number of square colours")
        p.add_argument("--b", type=int, help="number of domino colours")
        p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
        p.add_argument("--limit", type=int, help=f"oracle cell cap (default {DEFAULT_LIMIT})")
        p.add_argument("--allow-large", action="store_true", help="acknowledge a --limit above the default")

    p = sub.add_parser("board", help="print the cell graph of a board")
    common(p, default_format="json")
    p.add_argument("--variant", choices=VARIANTS, default=FULL)
    p.add_argument("--m", type=int, help="length of a path board")

    for name, helptext in (("count", "count tilings of one board"), ("seq", "tabulate counts over a range of n")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--variant", choices=VARIANTS, default=FULL)
        p.add_argument("--m", type=int, help="length of a path board")
        p.add_argument("--method", choices=METHODS, default="system")
        p.add_argument("--unbreakable", action="store_true", help="count only tilings breakable nowhere")
        p.add_argument("--mode", choices=rec.MODES, default=rec.CORRECTED, help="seeding of the two-term unbreakable recurrence")

    p = sub.add_parser("coeffs", help="quartic recurrence coefficients for one q")
    common(p)
    p.add_argument("--method", choices=("closed", "system", "fib"), default="closed")

    p = sub.add_parser("verify", help="run the full cross-verification")
    common(p, default_format="json", q_range=True)
    p.add_argument("--points", help='weight points, e.g. "(1,1);(2,3)"')
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.q_values = parse_range(args.q_text, "q")
        args.n = parse_range(args.n_text, "n")
        args.q = args.q_values[0]
        if args.command == "verify":
            text, status = cmd_verify(args)
        else:
            handler = {"board": cmd_board, "count": cmd_count, "seq": cmd_seq, "coeffs": cmd_coeffs}[args.command]
            if args.command in ("board", "count"):
                _single(args.q_values, "q")
            if args.command == "seq":
                _single(args.q_values, "q")
            text, status = handler(args), EXIT_OK
    except (UsageError, ParameterError) as exc:
        print(f"mosaictile {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except OracleLimitError as exc:
        print(f"mosaictile {args.command}: {exc}", file=err)
        return EXIT_LIMIT
    print(text, file=out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
