"""gauss-spectra: command-line front end.

Exit status is 0 on success, 1 when the library rejects the input (the
error class name is printed), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graph as gr
from . import poly as pl
from .diagram import PartialState, double_cover, parse_gauss_code, serialize
from .errors import GaussSpectraError
from .pretzel import PretzelParams, census, default_threads, discrepancies, sweep
from .smoothing import boundary_count_oracle, loop_count_rlcp, loop_count_zlcp
from .verify import run_verify

METHODS = ("rlcp", "zlcp", "oracle")


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def cmd_parse(args) -> int:
    d = parse_gauss_code(args.code)
    _emit(args, serialize(d), {"code": serialize(d), "n": d.n})
    return 0


def cmd_graph(args) -> int:
    g = gr.interlacement_graph(parse_gauss_code(args.code))
    _emit(args, gr.serialize_graph(g), {"n": g.n, "edges": sorted(g.edges)})
    return 0


def cmd_charpoly(args) -> int:
    p = pl.graph_poly(gr.interlacement_graph(parse_gauss_code(args.code)))
    _emit(args, p.to_text(), {"coefficients": list(p.coeffs), "polynomial": str(p)})
    return 0


def cmd_count(args) -> int:
    d = parse_gauss_code(args.code)
    s = PartialState.from_string(args.state)
    if args.method == "all":
        # the GF(2) count needs every chord smoothed
        methods = tuple(m for m in METHODS if m != "zlcp" or not s.erased)
    else:
        methods = (args.method,)
    counts = {}
    for meth in methods:
        if meth == "rlcp":
            counts[meth] = loop_count_rlcp(d, s)
        elif meth == "zlcp":
            counts[meth] = loop_count_zlcp(d, s)
        else:
            counts[meth] = boundary_count_oracle(d, s).component_count
    values = set(counts.values())
    agree = len(values) == 1
    if args.format == "json":
        print(json.dumps({"counts": counts, "agree": agree}))
    elif agree:
        print(values.pop())
    else:
        print(" ".join(f"{k}={v}" for k, v in counts.items()))
    return 0 if agree else 1


def cmd_cover(args) -> int:
    d = parse_gauss_code(args.code)
    s = PartialState.from_string(args.state)
    cover, _ = double_cover(d, s, args.chord, args.flavor)
    _emit(args, serialize(cover), {"code": serialize(cover), "n": cover.n})
    return 0


def cmd_pretzel(args) -> int:
    params = PretzelParams(args.p, args.q, args.r)
    closed = not args.census_only
    brute = not args.closed_only
    if args.sweep:
        rows = sweep(params, args.j, args.threads, closed, brute)
    else:
        rows = [census(params, args.m, args.j, args.threads, closed, brute)]
    payload = [row.to_dict() for row in rows]
    if args.format == "text":
        for row in rows:
            print(f"m={row.m} j={row.j} closed={row.to_dict()['closed_form']} brute={row.brute_force} agrees={row.agrees}")
    else:
        print(json.dumps(payload if args.sweep else payload[0]))
    for dis in discrepancies(rows):
        print(f"discrepancy: {json.dumps(dis.to_dict())}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    results = run_verify(args.max_chords, threads=args.threads)
    if args.format == "json":
        print(json.dumps({name: {"ok": r.ok, "checked": r.checked, "failed": r.failed} for name, r in results.items()}))
    else:
        for r in results.values():
            print(r.line())
    return 0 if all(r.ok for r in results.values()) else 1


def _common(fmt: str = "text") -> argparse.ArgumentParser:
    # a fresh parent per subcommand: argparse shares parent actions, so one
    # subcommand's default would otherwise leak into the others
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=fmt)
    common.add_argument("--threads", type=int, default=default_threads(), help="worker processes for pretzel and verify")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gauss-spectra", description="Count state curves of Gauss diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[_common()], help="echo the canonical Gauss code")
    p.add_argument("code")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("graph", parents=[_common()], help="interlacement graph")
    p.add_argument("code")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("charpoly", parents=[_common()], help="skew characteristic polynomial, constant term first")
    p.add_argument("code")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("count", parents=[_common()], help="curves left by a partial smoothing")
    p.add_argument("code")
    p.add_argument("state", help="one of o/u/x per chord, e.g. oux")
    p.add_argument("--method", choices=METHODS + ("all",), default="rlcp")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("cover", parents=[_common()], help="double-cover Gauss code at an unoriented chord")
    p.add_argument("code")
    p.add_argument("state")
    p.add_argument("--chord", type=int, required=True)
    p.add_argument("--flavor", choices=("first", "second"), default="first")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("pretzel", parents=[_common("json")], help="closed form vs census for L(p,q,r)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--j", type=int, default=0)
    only = p.add_mutually_exclusive_group()
    only.add_argument("--closed-only", action="store_true")
    only.add_argument("--census-only", action="store_true")
    p.add_argument("--sweep", action="store_true", help="one row per m")
    p.set_defaults(func=cmd_pretzel)

    p = sub.add_parser("verify", parents=[_common()], help="exhaustive small-instance checks")
    p.add_argument("--max-chords", type=int, default=5)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("--threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except GaussSpectraError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
