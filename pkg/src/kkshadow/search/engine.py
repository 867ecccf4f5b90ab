"""Exact minimisation of the edge count under the clique-degree condition.

The search branches on the edges of K_n^ell in antilex order ("absent" first)
and prunes with:

* the global bound (n/ell) C(t, ell-1), tightened to ceil(n * dmin / ell);
* a per-vertex degree bound: every vertex needs degree >= dmin (see
  :func:`kkshadow.cliquedeg.min_degree`), and the deficit still to be covered
  costs at least ceil(deficit / ell) further edges;
* clique feasibility: each vertex must still reach the threshold using the
  edges not yet excluded;
* an incumbent from the explicit upper construction;
* symmetry breaking: only labelings with non-increasing degree sequence are
  visited.

Work is split into 2^d subtrees by fixing the first d edges.  Subtrees never
share incumbents, so node counts, optima and witnesses do not depend on the
number of worker threads or on the order they finish in.

Checkpoint files (JSON, ``format = "kkshadow-frontier"``, ``version = 1``)
record the unexplored subtree prefixes and the per-prefix results so far;
:func:`run_search` with ``resume=`` continues from one.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..cliquedeg import check_condition, edge_lower_bound, min_degree
from ..errors import PreconditionError, SearchLimitError
from ..hypergraph import Parameters, UniformHypergraph
from .canon import canonical_form, canonical_key
from .constructions import construct_upper
from .kernels import MAX_EDGE_UNIVERSE, build_tables, run_bnb, run_scan

DEFAULT_LIMITS = {2: 9}
DEFAULT_LIMIT_OTHER = 7
PREFIX_DEPTH = 6
CHECKPOINT_FORMAT = "kkshadow-frontier"
CHECKPOINT_VERSION = 1


def default_limit(ell: int) -> int:
    return DEFAULT_LIMITS.get(ell, DEFAULT_LIMIT_OTHER)


@dataclass
class SearchResult:
    params: Parameters
    optimum: int | None  # None when infeasible or unfinished
    witnesses: list[UniformHypergraph]
    lower_bound_used: Fraction
    upper_bound_used: int | None
    nodes_explored: int
    elapsed: float | None
    complete: bool = False  # witnesses are all extremal graphs up to isomorphism
    finished: bool = True
    labeled_solutions: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


def is_feasible(params: Parameters) -> bool:
    """Some ell-graph on n vertices meets the condition iff K_n^ell does."""
    return params.n >= params.k and math.comb(params.n - 1, params.k - 1) >= params.threshold


def upper_graph(params: Parameters) -> UniformHypergraph:
    """A graph meeting the condition, used as the incumbent."""
    n, ell = params.n, params.ell
    tc = math.ceil(params.t)
    if n >= tc + 1:
        g = construct_upper(n, tc, ell)
    else:
        g = UniformHypergraph.complete(n, ell)
    ok, _ = check_condition(g, params)
    assert ok, "upper-bound graph violates the condition"
    return g


def _params_json(params: Parameters) -> dict:
    return {"n": params.n, "t": str(params.t), "k": params.k, "ell": params.ell}


def _load_checkpoint(path, params, mode, depth):
    data = json.loads(Path(path).read_text())
    if data.get("format") != CHECKPOINT_FORMAT or data.get("version") != CHECKPOINT_VERSION:
        raise PreconditionError(f"{path}: not a version-{CHECKPOINT_VERSION} search checkpoint")
    if data["params"] != _params_json(params) or data["mode"] != mode or data["prefix_depth"] != depth:
        raise PreconditionError(f"{path}: checkpoint was written for a different search")
    return {int(rec["prefix"]): (int(rec["best"]), [int(x) for x in rec["solutions"]], int(rec["nodes"]))
            for rec in data["completed"]}


def _write_checkpoint(path, params, mode, depth, ub, prefixes, done):
    data = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "params": _params_json(params),
        "mode": mode,
        "prefix_depth": depth,
        "symmetry_breaking": True,
        "upper_bound": ub,
        "pending": [p for p in prefixes if p not in done],
        "completed": [
            {"prefix": p, "best": done[p][0], "nodes": done[p][2], "solutions": done[p][1]}
            for p in sorted(done)
        ],
    }
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(json.dumps(data, indent=1))
    os.replace(tmp, path)


def run_search(
    params: Parameters,
    enumerate_all: bool,
    jobs: int = 1,
    limit: int | None = None,
    checkpoint: str | os.PathLike | None = None,
    resume: str | os.PathLike | None = None,
    stop_after: int | None = None,
) -> SearchResult:
    start = time.perf_counter()
    lb = edge_lower_bound(params.n, params.t, params.ell)
    if not is_feasible(params):
        return SearchResult(params, None, [], lb, None, 0, time.perf_counter() - start,
                            complete=True, notes=["infeasible: no vertex can reach the threshold"])
    limit = default_limit(params.ell) if limit is None else limit
    if params.n > limit:
        raise SearchLimitError(
            f"n={params.n} exceeds the desk-scale limit {limit} for ell={params.ell}; "
            f"pass a larger limit (--limit) only if you are prepared for a long run"
        )
    if math.comb(params.n, params.ell) > MAX_EDGE_UNIVERSE:
        raise SearchLimitError(f"C({params.n},{params.ell}) exceeds the {MAX_EDGE_UNIVERSE}-edge universe")

    thr = params.threshold
    dmin = min_degree(params.t, params.k, params.ell)
    lb_int = max(math.ceil(lb), math.ceil(params.n * dmin / params.ell))
    ub_graph = upper_graph(params)
    ub = ub_graph.num_edges

    if not enumerate_all and ub <= lb_int:
        return SearchResult(params, ub, [canonical_form(ub_graph)], lb, ub, 0,
                            time.perf_counter() - start, complete=False,
                            notes=["upper construction meets the lower bound"])

    tables = build_tables(params.n, params.k, params.ell)
    depth = min(PREFIX_DEPTH, tables.num_edges)
    prefixes = list(range(1 << depth))
    mode = "enumerate" if enumerate_all else "min"
    done = _load_checkpoint(resume, params, mode, depth) if resume else {}
    todo = [p for p in prefixes if p not in done]
    if stop_after is not None:
        todo = todo[:stop_after]

    def task(p):
        return p, run_bnb(tables, p, depth, thr, dmin, ub, enumerate_all)

    def record(p, res):
        best, sols, nodes = res
        done[p] = (best, sols, nodes)
        if checkpoint is not None:
            _write_checkpoint(checkpoint, params, mode, depth, ub, prefixes, done)

    if jobs > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for p, res in pool.map(task, todo):
                record(p, res)
    else:
        for p in todo:
            record(*task(p))

    nodes = sum(v[2] for v in done.values())
    if len(done) < len(prefixes):
        return SearchResult(params, None, [], lb, ub, nodes, time.perf_counter() - start,
                            finished=False, notes=[f"{len(prefixes) - len(done)} subtree(s) pending"])

    improved = [v for v in done.values() if v[1]]
    best = min([v[0] for v in improved], default=ub)
    masks = sorted({m for v in improved if v[0] == best for m in v[1]})
    graphs = [tables.to_graph(m) for m in masks]
    if not enumerate_all:
        if not graphs:
            graphs = [ub_graph]
        witnesses = [min((canonical_form(g) for g in graphs), key=canonical_key)]
    else:
        canon = {}
        for g in graphs:
            cf = canonical_form(g)
            canon.setdefault(canonical_key(cf), cf)
        witnesses = [canon[key] for key in sorted(canon)]
    return SearchResult(params, best, witnesses, lb, ub, nodes, time.perf_counter() - start,
                        complete=enumerate_all, labeled_solutions=len(masks))


def min_edges(params: Parameters, **kw) -> SearchResult:
    return run_search(params, enumerate_all=False, **kw)


def enumerate_extremal(params: Parameters, **kw) -> SearchResult:
    return run_search(params, enumerate_all=True, **kw)


def exhaustive_oracle(params: Parameters, use_jit: bool | None = None, max_edges: int = 28):
    """No-pruning reference: scan every ell-graph on n vertices.

    Returns ``(optimum, canonical witnesses, labeled optimum count)``;
    optimum is None when infeasible.
    """
    tables = build_tables(params.n, params.k, params.ell)
    if tables.num_edges > max_edges:
        raise SearchLimitError(f"2^{tables.num_edges} graphs is beyond the exhaustive oracle")
    best, masks = run_scan(tables, params.threshold, use_jit=use_jit)
    if best > tables.num_edges:
        return None, [], 0
    canon = {}
    for m in masks:
        cf = canonical_form(tables.to_graph(m))
        canon.setdefault(canonical_key(cf), cf)
    return best, [canon[k] for k in sorted(canon)], len(masks)
