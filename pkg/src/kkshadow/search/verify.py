"""Structural checks on extremal graphs: isolated complete components, no
crossing edges between maximum cliques, at most one intersecting pair of
(t+1)-cliques, and the excess-degree bound."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..cliquedeg import check_condition, excess_bound, excess_degree_sum
from ..hypergraph import Parameters, UniformHypergraph, cliques
from ..transform import crossing_edges
from .constructions import has_isolated_clique
from .engine import enumerate_extremal


def clique_order(params: Parameters) -> int:
    """Vertex count of the cliques the structure checks look at: ceil(t) + 1."""
    return math.ceil(params.t) + 1


def theorem_range(params: Parameters) -> Fraction:
    """(1/4)(t+1)^2 C(t-1, ell-2) + 2t; the isolated-copy statement is asserted above it."""
    return excess_bound(params.t, params.ell) + 2 * params.t


@dataclass
class WitnessReport:
    graph: UniformHypergraph
    condition: bool
    isolated_clique: bool
    cliques: list[tuple[int, ...]]
    crossing: list[dict] = field(default_factory=list)  # offending clique pairs only
    intersecting_pairs: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    excess: Fraction = Fraction(0)
    excess_bound: Fraction = Fraction(0)

    @property
    def crossing_free(self) -> bool:
        return not self.crossing

    @property
    def at_most_one_intersecting(self) -> bool:
        return len(self.intersecting_pairs) <= 1

    @property
    def excess_ok(self) -> bool:
        return self.excess <= self.excess_bound


def inspect_graph(h: UniformHypergraph, params: Parameters) -> WitnessReport:
    size = clique_order(params)
    ok, _ = check_condition(h, params)
    fam = list(cliques(h, size))
    crossing = []
    inter = []
    for a1, a2 in combinations(fam, 2):
        bad = crossing_edges(h, a1, a2)
        if bad:
            crossing.append({"a1": a1, "a2": a2, "edges": list(bad)})
        if set(a1) & set(a2):
            inter.append((a1, a2))
    return WitnessReport(
        graph=h,
        condition=ok,
        isolated_clique=has_isolated_clique(h, size),
        cliques=fam,
        crossing=crossing,
        intersecting_pairs=inter,
        excess=excess_degree_sum(h, params.t),
        excess_bound=excess_bound(params.t, params.ell),
    )


@dataclass
class TheoremReport:
    params: Parameters
    optimum: int | None
    in_range: bool
    range_threshold: Fraction
    witnesses: list[WitnessReport]
    nodes_explored: int
    elapsed: float | None

    @property
    def some_isolated(self) -> bool:
        return any(w.isolated_clique for w in self.witnesses)

    @property
    def all_isolated(self) -> bool:
        return bool(self.witnesses) and all(w.isolated_clique for w in self.witnesses)


def verify_theorem1(params: Parameters, **search_kw) -> TheoremReport:
    res = enumerate_extremal(params, **search_kw)
    thr = theorem_range(params)
    return TheoremReport(
        params=params,
        optimum=res.optimum,
        in_range=params.n > thr,
        range_threshold=thr,
        witnesses=[inspect_graph(w, params) for w in res.witnesses],
        nodes_explored=res.nodes_explored,
        elapsed=res.elapsed,
    )


def census(t, k: int, ell: int, ns, **search_kw) -> list[dict]:
    """One row per n: optimum, witness count, and isolated-copy presence."""
    rows = []
    for n in ns:
        params = Parameters(n, t, k, ell)
        rep = verify_theorem1(params, **search_kw)
        rows.append({
            "n": n,
            "optimum": rep.optimum,
            "witnesses": len(rep.witnesses),
            "some_isolated": rep.some_isolated,
            "all_isolated": rep.all_isolated,
            "in_range": rep.in_range,
            "nodes_explored": rep.nodes_explored,
        })
    return rows


def smallest_all_isolated(rows: list[dict]) -> int | None:
    """Least n in the table from which every later row has all witnesses isolated."""
    best = None
    for row in reversed(rows):
        if row["optimum"] is not None and row["all_isolated"]:
            best = row["n"]
        else:
            break
    return best

