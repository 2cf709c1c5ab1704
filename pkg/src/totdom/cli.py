"""Command-line interface.

Exit codes: 0 all checks pass, 1 a mathematical violation was found,
2 usage or precondition error, 3 malformed input.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Iterator, Sequence

from .corpus import GraphRecord, enumerate_connected, parse_graph6, read_graph6, write_graph6
from .errors import Graph6Error, TotDomError
from .families import (
    K2,
    Verdict,
    build_equality_tdset,
    classify,
    decompose_product_tdset,
)
from .gn import EXACT_KN_CAP, build_gn, gn_bounds_check, gn_product_is_td, gn_product_tdset, quotient_interval
from .graph import Graph, cartesian_product
from .harness import CAMPAIGNS, build_campaign, frac, quotient, run_campaign
from .solvers import DEFAULT_LIMIT, all_min_td_sets, gamma, gamma_t, rho_2

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _emit(obj: Any) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _graphs(arg: str) -> Iterator[GraphRecord]:
    """A graph6 file path, or a single graph6 string."""
    if os.path.exists(arg):
        yield from read_graph6(arg)
    else:
        yield GraphRecord(parse_graph6(arg), arg.strip(), "argument")


def _one(arg: str) -> Graph:
    recs = list(_graphs(arg))
    if len(recs) != 1:
        raise _InputError(f"expected exactly one graph in {arg!r}, got {len(recs)}")
    return recs[0].graph


def _cmd_invariant(args: argparse.Namespace) -> int:
    solve = {"gamma-t": gamma_t, "gamma": gamma, "rho2": rho_2}[args.command]
    for rec in _graphs(args.graph):
        res = solve(rec.graph)
        _emit({"g6": rec.g6, "value": res.value, "certificate": res.certificate.to_list()})
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    G = _one(args.graph)
    c = classify(G)
    out: dict[str, Any] = {"g6": write_graph6(G), "families": c.labels()}
    if c.f1:
        out["f1"] = {"dominating_set": c.f1.dominating_set.to_list()}
    if c.f2:
        out["f2"] = {k: getattr(c.f2, k).to_list() for k in ("D", "D1", "D2")}
    if c.f3:
        out["f3"] = {
            "V1": c.f3.V1.to_list(),
            "V2": c.f3.V2.to_list(),
            "dominating_set": c.f3.f1.dominating_set.to_list(),
            "D1": c.f3.f2.D1.to_list(),
            "D2": c.f3.f2.D2.to_list(),
        }
    if c.any:
        P = cartesian_product(G, K2)
        out["k2_tdset"] = P.pairs(build_equality_tdset(G, classification=c))
    _emit(out)
    return EXIT_OK


def _cmd_product(args: argparse.Namespace) -> int:
    G, H = _one(args.g), _one(args.h)
    P = cartesian_product(G, H)
    out: dict[str, Any] = {"n": P.product.n, "edges": P.product.num_edges()}
    if P.product.n <= 62:
        out["g6"] = write_graph6(P.product)
    if args.gamma_t:
        res = gamma_t(P.product)
        out["gamma_t"] = res.value
        out["certificate"] = P.pairs(res.certificate)
    _emit(out)
    return EXIT_OK


def _report_json(rep, P) -> dict[str, Any]:
    out = {"D": P.pairs(rep.D)}
    for name in ("S", "Sprime", "Sdoubleprime", "P", "Pprime", "Pdoubleprime", "Tprime", "X"):
        out[name] = getattr(rep, name).to_list()
    out["Sdoubleprime_i"] = [x.to_list() for x in rep.Sdoubleprime_i]
    out["statements"] = {k: v.value for k, v in rep.statements.items()}
    return out


def _cmd_decompose(args: argparse.Namespace) -> int:
    G, H = _one(args.g), _one(args.h)
    P = cartesian_product(G, H)
    if args.all_min_sets:
        sets = all_min_td_sets(P.product, args.limit)
    else:
        sets = [gamma_t(P.product).certificate]
    failed = False
    for D in sets:
        rep = decompose_product_tdset(G, H, D)
        failed |= any(v is Verdict.FAIL for v in rep.statements.values())
        _emit(_report_json(rep, P))
    return EXIT_VIOLATION if failed else EXIT_OK


def _cmd_gn(args: argparse.Namespace) -> int:
    k, n = args.k, args.n
    out: dict[str, Any] = {"k": k, "n": n, "lower": 2 * k * n + k, "upper": 2 * k * n + 2 * k}
    ok = True
    if args.construct:
        D = gn_product_tdset(k, n)
        td = gn_product_is_td(k, n)
        out["construction"] = {"size": len(D), "total_dominating": td, "vertices": D.to_list()}
        ok &= td
    if args.exact:
        b = gn_bounds_check(k, n, force=args.force)
        q = quotient_interval(k, n, b.exact)
        out["exact"] = b.exact
        out["bounds_hold"] = b.holds
        out["qt"] = frac(q.qt)
        out["corollary_interval"] = [frac(q.lower), frac(q.upper)]
        out["corollary_holds"] = q.holds
        ok &= b.holds and q.holds
    if not (args.construct or args.exact):
        gk = build_gn(k)
        out["g6_gk"] = write_graph6(gk.graph)
    _emit(out)
    return EXIT_OK if ok else EXIT_VIOLATION


def _cmd_quotient(args: argparse.Namespace) -> int:
    rec = quotient(_one(args.g), _one(args.h))
    _emit(rec.to_dict())
    return EXIT_OK if rec.qt * 2 >= 1 else EXIT_VIOLATION


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.checkpoint and not args.out:
        raise _UsageError("--checkpoint requires --out")
    campaign = build_campaign(
        args.campaign,
        g_max=args.g_max,
        g_file=args.g_file,
        h_max=args.h_max,
        h_file=args.h_file,
        td_cap=args.td_cap,
    )
    report = run_campaign(campaign, out=args.out, checkpoint=args.checkpoint, jobs=args.jobs,
                          stop_after=args.stop_after)
    summary = report.to_dict()
    summary["violations"] = len(report.violations)
    summary["errors"] = len(report.errors)
    _emit(summary)
    for v in report.violations:
        print(json.dumps(v), file=sys.stderr)
    return report.exit_code


def _cmd_enumerate(args: argparse.Namespace) -> int:
    if not args.connected:
        raise _UsageError("only --connected enumeration is supported")
    lines = [write_graph6(g) for g in enumerate_connected(args.n)]
    text = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return EXIT_OK


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="totdom", description="Total domination in Cartesian products.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_ in (("gamma-t", "total domination number"), ("gamma", "domination number"),
                        ("rho2", "2-packing number")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", metavar="FILE|G6")
        sp.set_defaults(func=_cmd_invariant)

    sp = sub.add_parser("classify", help="membership in F1, F2, F3")
    sp.add_argument("graph", metavar="G6")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("product", help="Cartesian product of two graphs")
    sp.add_argument("--g", required=True, metavar="G6")
    sp.add_argument("--h", required=True, metavar="G6")
    sp.add_argument("--gamma-t", action="store_true")
    sp.set_defaults(func=_cmd_product)

    sp = sub.add_parser("decompose", help="split a minimum TD-set of G x H and check statements A..M")
    sp.add_argument("--g", required=True, metavar="G6")
    sp.add_argument("--h", required=True, metavar="G6")
    sp.add_argument("--all-min-sets", action="store_true")
    sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("gn", help="the G_k x G_n construction and bounds")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--construct", action="store_true")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--force", action="store_true", help=f"solve beyond k*n <= {EXACT_KN_CAP}")
    sp.set_defaults(func=_cmd_gn)

    sp = sub.add_parser("quotient", help="total domination quotient")
    sp.add_argument("--g", required=True, metavar="G6")
    sp.add_argument("--h", required=True, metavar="G6")
    sp.set_defaults(func=_cmd_quotient)

    sp = sub.add_parser("verify", help="run a verification campaign")
    sp.add_argument("campaign", choices=CAMPAIGNS)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--g-max", type=int)
    g.add_argument("--g-file")
    h = sp.add_mutually_exclusive_group()
    h.add_argument("--h-max", type=int)
    h.add_argument("--h-file")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.add_argument("--checkpoint")
    sp.add_argument("--td-cap", type=int, default=DEFAULT_LIMIT)
    sp.add_argument("--stop-after", type=int, help=argparse.SUPPRESS)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("enumerate", help="connected graphs up to isomorphism as graph6")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_enumerate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (Graph6Error, _InputError, OSError, UnicodeDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TotDomError, _UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
