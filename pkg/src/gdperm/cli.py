"""Command-line entry point: ``gdperm <subcommand> ...``.

Exit codes: 0 success/valid, 1 semantic failure (invalid family, FAIL row),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import constructions as C
from .bounds import bound_report, line_graph_alpha_ratio
from .core import COLLIDING, DIFFERENT, Family, InputError, verify_family
from .covering import CoverCertificate, covering_to_perms, perms_to_covering, verify_cover
from .formats import SCHEMA_VERSION, format_family, parse_family, parse_graph
from .solver import extremal_scan, kappa_sweep, solve


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=1, sort_keys=True, default=str) + "\n", out)


def _order(s: str | None):
    if not s:
        return None
    try:
        return tuple(int(x) for x in s.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad --fixed-order {s!r}") from None


def _load_family(path: str, graph_path: str | None = None, mode: str | None = None) -> Family:
    g = parse_graph(_read(graph_path)) if graph_path else None
    return parse_family(_read(path), g, mode)


def _ints(params, count: int, name: str) -> list:
    if len(params) != count:
        raise UsageError(f"construct {name} takes {count} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"construct {name}: parameters must be integers") from None


def cmd_construct(args) -> int:
    name, params = args.name, args.params
    if name == "star":
        f = C.construct_star(*_ints(params, 1, name))
    elif name == "matching":
        f = C.construct_matching(*_ints(params, 1, name))
    elif name == "complete":
        f = C.construct_complete(*_ints(params, 1, name))
    elif name == "p4ten":
        _ints(params, 0, name)
        f = C.construct_p4_ten()
    elif name == "catalan":
        f = C.catalan_construction(*_ints(params, 1, name), anchor=args.anchor)
    elif name == "rho-recursion":
        f = C.rho_recursion_build(*_ints(params, 1, name))
    elif name == "parity-double":
        (n,) = _ints(params, 1, name)
        if not args.family:
            raise UsageError("parity-double needs --family")
        f = C.parity_double(_load_family(args.family[0]), n)
    elif name == "product":
        if not args.family:
            raise UsageError("product needs one or more --family")
        f = C.product_construction([_load_family(p) for p in args.family])
    elif name == "edge-split":
        a, b, c, d = _ints(params, 4, name)
        if not args.family:
            raise UsageError("edge-split needs --family")
        f = C.edge_split_transform(_load_family(args.family[0]), (a, b), c, d)
    else:
        raise UsageError(f"unknown construction {name!r}")
    _emit(format_family(f), args.out)
    return 0


def cmd_verify(args) -> int:
    f = _load_family(args.family, args.graph, args.mode)
    order = _order(args.fixed_order)
    if order:
        f = Family(f.words, f.graph, f.relation, order, f.meta)
    rep = verify_family(f)
    for line in rep.lines():
        print(line)
    print(f"{'valid' if rep.valid else 'invalid'}: {len(f)} words, {rep.checked_pairs} pairs, relation {f.relation}")
    return 0 if rep.valid else 1


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.graph))
    order = _order(args.fixed_order)
    kw = {"node_limit": args.node_limit}
    if args.n_sweep:
        if args.mode != DIFFERENT or order:
            raise UsageError("--n-sweep supports only unconstrained 'different' mode")
        results = kappa_sweep(g, args.n_sweep, args.threads, **kw)
        payload = {"schema_version": SCHEMA_VERSION, "sweep": [r.to_dict() for r in results]}
        if args.no_timing:
            for r in payload["sweep"]:
                r.pop("elapsed_ms", None)
        for r in results:
            print(f"n={r.n} value={r.value} cap_attained={r.stats['cap_attained']}", file=sys.stderr)
    else:
        if args.n is None:
            raise UsageError("solve needs --n or --n-sweep")
        res = solve(g, args.n, args.mode, order, args.threads, **kw)
        payload = res.to_dict()
        if args.no_timing:
            payload.pop("elapsed_ms", None)
        print(f"value={res.value} certified_optimal={res.certified_optimal}", file=sys.stderr)
    _dump(payload, args.out)
    return 0


def cmd_bounds(args) -> int:
    payload = {"schema_version": SCHEMA_VERSION}
    if args.graph:
        payload.update(bound_report(parse_graph(_read(args.graph)), args.rho_n).to_dict())
    elif args.rho_n:
        from .bounds import binomial_upper

        payload["binomial_upper"] = binomial_upper(args.rho_n)
    if args.alpha_t:
        ar = line_graph_alpha_ratio(args.alpha_t)
        payload["line_graph_alpha"] = {
            "t": ar.t, "vertices": ar.vertices, "alpha": ar.alpha,
            "ratio": str(ar.ratio), "bipartite_lower": ar.bipartite_lower,
        }
    if len(payload) == 1:
        raise UsageError("bounds needs --graph, --rho-n or --alpha-t")
    _dump(payload, args.out)
    return 0


def cmd_cover(args) -> int:
    if args.direction == "to-cover":
        if not args.family:
            raise UsageError("to-cover needs --family")
        cert = perms_to_covering(_load_family(args.family))
        rep = verify_cover(cert)
        _emit(cert.to_json() + "\n", args.out)
        return 0 if rep.valid else 1
    if not args.cert:
        raise UsageError("from-cover needs --cert")
    try:
        data = json.loads(_read(args.cert))
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad certificate JSON: {exc}") from None
    cert = CoverCertificate.from_dict(data)
    rep = verify_cover(cert)
    if not rep.valid:
        for line in rep.failures:
            print(line, file=sys.stderr)
        return 1
    _emit(format_family(covering_to_perms(cert)), args.out)
    return 0


def cmd_scan(args) -> int:
    rep = extremal_scan(args.v, args.l, args.n, args.threads)
    for e in rep.entries:
        print(f"{list(e.graph.edges)} -> {e.value}", file=sys.stderr)
    _dump(rep.to_dict(), args.out)
    return 0


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    rows = run_all(full=args.full)
    width = max(len(r.name) for r in rows)
    print(f"{'check':<{width}}  {'expected':<22} {'computed':<22} result")
    for r in rows:
        print(f"{r.name:<{width}}  {r.expected:<22} {r.computed:<22} {'PASS' if r.ok else 'FAIL'}")
    failed = sum(not r.ok for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} PASS")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gdperm", description="Graph-different permutation families: constructions and exact search.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit an explicit family")
    c.add_argument("name", choices=["star", "matching", "complete", "p4ten", "catalan", "rho-recursion",
                                    "parity-double", "product", "edge-split"])
    c.add_argument("params", nargs="*")
    c.add_argument("--family", action="append", help="input family file (parity-double, product, edge-split)")
    c.add_argument("--anchor", type=int, help="catalan anchor position (1-based)")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a family pairwise")
    v.add_argument("--family", required=True)
    v.add_argument("--graph", help="graph file; defaults to the family header graph")
    v.add_argument("--mode", choices=[DIFFERENT, COLLIDING])
    v.add_argument("--fixed-order")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="exact kappa(G, n) by maximum clique")
    s.add_argument("--graph", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--mode", choices=[DIFFERENT, COLLIDING], default=DIFFERENT)
    s.add_argument("--fixed-order")
    s.add_argument("--n-sweep", type=int, metavar="MAX")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--node-limit", type=int, default=0)
    s.add_argument("--no-timing", action="store_true", help="omit elapsed_ms so reports are byte-stable")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bounds", help="closed-form bounds for a graph")
    b.add_argument("--graph")
    b.add_argument("--rho-n", type=int)
    b.add_argument("--alpha-t", type=int, help="also report the line-graph independence ratio for t")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    cv = sub.add_parser("cover", help="convert between matching families and line-graph coverings")
    cv.add_argument("direction", choices=["to-cover", "from-cover"])
    cv.add_argument("--family")
    cv.add_argument("--cert")
    cv.add_argument("--out")
    cv.set_defaults(func=cmd_cover)

    sc = sub.add_parser("scan", help="kappa(G, n) over all graphs with v vertices and l edges")
    sc.add_argument("--v", type=int, required=True)
    sc.add_argument("--l", type=int, required=True)
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--threads", type=int, default=1)
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_scan)

    r = sub.add_parser("reproduce", help="run the desk-scale reproduction table")
    r.add_argument("--full", action="store_true", help="also run rho(7)")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
