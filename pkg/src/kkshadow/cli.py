"""``kkshadow`` command-line interface.

Every subcommand prints one JSON report on stdout.  Exit status is 0 on
success, 2 for usage errors and violated preconditions, 1 for anything else.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from fractions import Fraction

from . import __version__
from .cliquedeg import check_condition, edge_lower_bound, excess_bound, excess_degree_sum
from .errors import PreconditionError
from .hypergraph import Parameters, UniformHypergraph, shadow
from .io import build_report, dumps_report, graph_json, params_json, parse_hypergraph, serialize_hypergraph
from .order import as_rational, compress, gen_binomial, kk_min_shadow, lovasz_x
from .transform import g_transform, shift


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _vertex_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a decimal or p/q, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    """``a..b`` (inclusive), ``a,b,c`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b or a comma list, got {text!r}") from None


def _rational_list(text: str) -> list[Fraction]:
    if ".." in text:
        return [Fraction(v) for v in _int_range(text)]
    return [_rational(x) for x in text.split(",")]


def _family_json(family) -> list[list[int]]:
    return [list(s) for s in family]


def cmd_shadow(args):
    h = parse_hypergraph(args.input)
    fam = shadow(h.edges, args.s)
    if args.output:
        serialize_hypergraph(UniformHypergraph.from_edges(h.n, args.s, fam), args.output)
    return params_json(n=h.n), {"r": h.r, "s": args.s, "size": len(fam), "family": _family_json(fam)}


def cmd_kk(args):
    m, k, s = args.m, args.k, args.s
    if m < 1 or not 1 <= s <= k:
        raise PreconditionError(f"need m >= 1 and 1 <= s <= k, got m={m}, k={k}, s={s}")
    x = lovasz_x(m, k)
    return params_json(k=k), {
        "m": m,
        "s": s,
        "discrete": kk_min_shadow(m, k, s),
        "lovasz_x": x,
        "lovasz_bound": gen_binomial(x, s),
    }


def cmd_compress(args):
    h = parse_hypergraph(args.input)
    fam = compress(h.edges)
    before = len(shadow(h.edges, h.r - 1)) if h.r >= 1 and h.edges else 0
    after = len(shadow(fam, h.r - 1)) if fam else 0
    out = UniformHypergraph.from_edges(max([h.n] + [e[-1] for e in fam]), h.r, fam)
    if args.output:
        serialize_hypergraph(out, args.output)
    return params_json(n=h.n), {
        "r": h.r,
        "size": len(fam),
        "family": _family_json(fam),
        "shadow_size_before": before,
        "shadow_size_after": after,
    }


def cmd_shift(args):
    h = parse_hypergraph(args.input)
    if not 1 <= args.i < args.j <= h.n:
        raise PreconditionError(f"need 1 <= i < j <= n={h.n}, got i={args.i}, j={args.j}")
    out = shift(h, args.i, args.j)
    if args.output:
        serialize_hypergraph(out, args.output)
    return params_json(n=h.n), {"i": args.i, "j": args.j, "graph": graph_json(out)}


def cmd_transform(args):
    g = parse_hypergraph(args.input)
    params = Parameters(g.n, args.t, args.k, g.r)
    gout, trace = g_transform(g, args.a1, args.a2, params)
    if args.output:
        serialize_hypergraph(gout, args.output)
    res = trace.to_dict()
    res["graph"] = graph_json(gout)
    return params_json(params), res


def cmd_verify(args):
    from .search.verify import inspect_graph, theorem_range

    h = parse_hypergraph(args.input)
    params = Parameters(h.n, args.t, args.k, args.ell)
    ok, prof = check_condition(h, params)
    rep = inspect_graph(h, params)
    return params_json(params), {
        "condition": ok,
        "threshold": params.threshold,
        "clique_counts": list(prof.counts),
        "deficient_vertices": list(prof.deficient),
        "num_edges": h.num_edges,
        "edge_lower_bound": edge_lower_bound(h.n, params.t, params.ell),
        "excess_degree_sum": excess_degree_sum(h, params.t),
        "excess_bound": excess_bound(params.t, params.ell),
        "excess_ok": rep.excess_ok,
        "clique_order": math.ceil(params.t) + 1,
        "cliques": _family_json(rep.cliques),
        "isolated_clique": rep.isolated_clique,
        "crossing_edges": rep.crossing,
        "crossing_free": rep.crossing_free,
        "intersecting_pairs": [[list(a), list(b)] for a, b in rep.intersecting_pairs],
        "at_most_one_intersecting": rep.at_most_one_intersecting,
        "in_theorem_range": params.n > theorem_range(params),
        "theorem_range": theorem_range(params),
    }


def _search_result_json(res, certify=None):
    out = {
        "feasible": (res.optimum is not None) if res.finished else None,
        "finished": res.finished,
        "optimum": res.optimum,
        "enumerated": res.complete,
        "witnesses": [graph_json(w) for w in res.witnesses],
        "lower_bound_used": res.lower_bound_used,
        "upper_bound_used": res.upper_bound_used,
        "nodes_explored": res.nodes_explored,
        "labeled_solutions": res.labeled_solutions,
        "notes": res.notes,
    }
    if certify is not None:
        out["oracle"] = certify
    return out


def _certify(params, res):
    from .search.canon import canonical_key
    from .search.engine import exhaustive_oracle

    best, witnesses, count = exhaustive_oracle(params)
    agree = best == res.optimum
    if res.complete:
        agree = agree and [canonical_key(w) for w in witnesses] == [canonical_key(w) for w in res.witnesses]
    return {"optimum": best, "witness_count": len(witnesses), "labeled_count": count, "agrees": agree}


def cmd_search(args):
    from .search.engine import run_search

    params = Parameters(args.n, args.t, args.k, args.ell)
    res = run_search(params, enumerate_all=args.enumerate, jobs=args.jobs, limit=args.limit,
                     checkpoint=args.checkpoint, resume=args.resume)
    certify = _certify(params, res) if args.certify else None
    return params_json(params), _search_result_json(res, certify)


def cmd_construct(args):
    from .search.constructions import construct_counterexample, construct_upper

    if args.family == "upper":
        if args.n is None or args.t is None or args.ell is None:
            raise PreconditionError("construct --family upper needs --n, --t and --ell")
        t = as_rational(args.t)
        if t.denominator != 1:
            raise PreconditionError(f"the upper construction needs integer t, got {t}")
        h = construct_upper(args.n, t.numerator, args.ell)
        pj = params_json(n=args.n, t=t, ell=args.ell)
    else:
        if args.tceil is None:
            raise PreconditionError("construct --family counterexample needs --tceil")
        h = construct_counterexample(args.tceil, args.copies)
        pj = params_json(n=h.n, ell=2)
    if args.output:
        serialize_hypergraph(h, args.output)
    return pj, {"family": args.family, "graph": graph_json(h), "degrees": h.degrees()}


def cmd_census(args):
    from .search.verify import census, smallest_all_isolated

    ts = args.t if args.t is not None else [Fraction(2)]
    tables = []
    for t in ts:
        rows = census(t, args.k, args.ell, args.n, jobs=args.jobs, limit=args.limit)
        tables.append({"t": t, "rows": rows, "smallest_n_all_isolated": smallest_all_isolated(rows)})
    return params_json(k=args.k, ell=args.ell, t=ts[0] if len(ts) == 1 else None), {"tables": tables}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kkshadow", description="Shadows, Kruskal-Katona bounds and exact extremal search.")
    p.add_argument("--version", action="version", version=f"kkshadow {__version__}")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null (byte-stable output)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("shadow", help="s-shadow of a family file")
    s.add_argument("--input", required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_shadow)

    s = sub.add_parser("kk", help="discrete and real Kruskal-Katona bounds")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.set_defaults(func=cmd_kk)

    s = sub.add_parser("compress", help="antilex compression of a family file")
    s.add_argument("--input", required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_compress)

    s = sub.add_parser("shift", help="apply the shifting operator S_ij")
    s.add_argument("--input", required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_shift)

    s = sub.add_parser("transform", help="merge two (t+1)-cliques and report properties")
    s.add_argument("--input", required=True)
    s.add_argument("--a1", type=_vertex_list, required=True)
    s.add_argument("--a2", type=_vertex_list, required=True)
    s.add_argument("--t", type=_rational, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("verify", help="condition, excess and clique-structure scans on a graph")
    s.add_argument("--input", required=True)
    s.add_argument("--t", type=_rational, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.set_defaults(func=cmd_verify)

    def add_search_opts(s):
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--limit", type=int, default=None, help="largest n the search will accept")
        s.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS,
                       help="report elapsed_ms as null")

    s = sub.add_parser("search", help="exact minimum edge count")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=_rational, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--enumerate", action="store_true", help="list every extremal graph up to isomorphism")
    s.add_argument("--certify", action="store_true", help="cross-check with the exhaustive oracle")
    s.add_argument("--checkpoint", help="write the search frontier here after every subtree")
    s.add_argument("--resume", help="continue from a checkpoint file")
    add_search_opts(s)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("construct", help="explicit graph families")
    s.add_argument("--family", choices=("upper", "counterexample"), required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--t", type=_rational)
    s.add_argument("--ell", type=int)
    s.add_argument("--tceil", type=int)
    s.add_argument("--copies", type=int, default=1)
    s.add_argument("--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("census", help="optima and isolated-clique presence over a range of n")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--t", type=lambda x: [_rational(x)])
    g.add_argument("--t-range", dest="t", type=_rational_list)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_int_range)
    g.add_argument("--n-range", dest="n", type=_int_range)
    add_search_opts(s)
    s.set_defaults(func=cmd_census)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        params, result = args.func(args)
    except PreconditionError as exc:
        print(f"kkshadow {args.command}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"kkshadow {args.command}: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    elapsed = None if args.no_timing else time.perf_counter() - start
    out.write(dumps_report(build_report(args.command, params, result, elapsed)))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
