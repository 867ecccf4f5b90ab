"""Shifting and the two-clique regularising transformation.

Given an ell-graph G and two vertex sets A1, A2 that both induce K_{t+1}, the
pipeline is:

1. ``build_gprime``: add t+1 auxiliary vertices C (labels n+1..n+t+1), delete
   edges inside A1 ∪ A2 that meet both A1∖A2 and A2∖A1, keep everything away
   from A1 ∪ A2, and re-home every edge that meets A1 ∪ A2 from outside.
   Such an edge splits as Y ∪ A with Y ⊆ B (outside, nonempty) and A ⊆ A1 ∪ A2,
   and each edge has exactly one such Y, so re-homing is independent per Y:
   the m_Y link edges of Y are placed on the m_Y antilex-smallest
   (ell-|Y|)-subsets of A1 ∪ C under the labeling v_1..v_{t+1} = A1 (ascending),
   v_{t+2}..v_{2(t+1)} = C.
2. ``eliminate_c``: relabel so V∖(A2∖A1) is 1..n-(t+1)+a, A2∖A1 fills the rest
   of 1..n and C is n+1..n+t+1 (ascending original order within each block),
   then for i = 1..n-(t+1)+a apply S_{i,n+t+1}, S_{i,n+t}, ..., S_{i,n+1}.
3. ``g_transform``: the subgraph induced on V = 1..n.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .cliquedeg import check_condition
from .errors import NotACliqueError, OrderError, PreconditionError, UniformityError
from .hypergraph import (
    Parameters,
    UniformHypergraph,
    cliques,
    from_mask,
    is_clique,
    neighborhood,
    restrict,
    to_mask,
    vertex_set,
)
from .order import Family, initial_segment, sort_family


def shift(h: UniformHypergraph, i: int, j: int) -> UniformHypergraph:
    """S_{i,j}: replace j by i in every edge where that creates a new edge."""
    if not i < j:
        raise OrderError(f"shift needs i < j, got i={i}, j={j}")
    if i < 1 or j > h.n:
        raise PreconditionError(f"shift indices outside 1..{h.n}")
    ib, jb = 1 << (i - 1), 1 << (j - 1)
    masks = h.masks
    out = set()
    for m in masks:
        if m & jb and not m & ib:
            moved = (m & ~jb) | ib
            if moved not in masks:
                out.add(moved)
                continue
        out.add(m)
    return UniformHypergraph(h.n, h.r, frozenset(out))


def boundary_set(g: UniformHypergraph, a1: Iterable[int], a2: Iterable[int]) -> tuple[int, ...]:
    """Vertices outside A1 ∪ A2 with a neighbor in A1 ∪ A2."""
    u = sorted(set(vertex_set(a1)) | set(vertex_set(a2)))
    return neighborhood(g, u)


def crossing_edges(g: UniformHypergraph, a1: Iterable[int], a2: Iterable[int]) -> Family:
    """Edges inside A1 ∪ A2 meeting both A1∖A2 and A2∖A1."""
    s1, s2 = set(vertex_set(a1)), set(vertex_set(a2))
    um, only1, only2 = to_mask(s1 | s2), to_mask(s1 - s2), to_mask(s2 - s1)
    return sort_family(from_mask(m) for m in g.masks if m & ~um == 0 and m & only1 and m & only2)


@dataclass
class PropertyReport:
    vertex_set_preserved: bool
    edge_non_increase: bool
    edge_confinement: bool
    clique_shifting: bool
    clique_condition: bool
    diagnostics: dict = field(default_factory=dict)

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "vertex_set_preservation": self.vertex_set_preserved,
            "edge_non_increase": self.edge_non_increase,
            "edge_confinement": self.edge_confinement,
            "clique_shifting": self.clique_shifting,
            "clique_condition": self.clique_condition,
        }

    @property
    def all_true(self) -> bool:
        return all(self.flags.values())


@dataclass
class TransformTrace:
    graph_id: str
    params: Parameters
    a1: tuple[int, ...]
    a2: tuple[int, ...]
    a: int
    b: tuple[int, ...]
    c: tuple[int, ...]
    labeling: tuple[int, ...]  # labeling[i - 1] is the vertex called v_i
    g: UniformHypergraph
    gprime: UniformHypergraph
    removed_crossing: Family
    link_sizes: dict[tuple[int, ...], int]
    shift_labels: dict[int, int] = field(default_factory=dict)  # original -> cascade label
    shift_steps: list[tuple[int, int]] = field(default_factory=list)  # in cascade labels
    gfinal: UniformHypergraph | None = None  # on V ∪ C, original labels
    gout: UniformHypergraph | None = None
    properties: PropertyReport | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def edge_counts(self) -> dict[str, int | None]:
        return {
            "g": self.g.num_edges,
            "gprime": self.gprime.num_edges,
            "gfinal": None if self.gfinal is None else self.gfinal.num_edges,
            "gout": None if self.gout is None else self.gout.num_edges,
        }

    def to_dict(self) -> dict:
        props = None
        if self.properties is not None:
            props = dict(self.properties.flags)
            props["diagnostics"] = self.properties.diagnostics
        return {
            "graph_id": self.graph_id,
            "a1": list(self.a1),
            "a2": list(self.a2),
            "a": self.a,
            "b": list(self.b),
            "c": list(self.c),
            "labeling": [[i, v] for i, v in enumerate(self.labeling, start=1)],
            "shift_steps": [list(s) for s in self.shift_steps],
            "edge_counts": self.edge_counts,
            "removed_crossing": [list(e) for e in self.removed_crossing],
            "properties": props,
            "notes": list(self.notes),
        }


def _graph_id(g: UniformHypergraph) -> str:
    text = f"{g.n} {g.r};" + ";".join(",".join(map(str, e)) for e in g.edges)
    return hashlib.sha1(text.encode()).hexdigest()[:12]


def _validate_pair(g: UniformHypergraph, a1, a2, params: Parameters):
    if g.r != params.ell:
        raise UniformityError(f"graph is {g.r}-uniform but ell={params.ell}")
    tp1 = params.t_int + 1
    a1, a2 = vertex_set(a1), vertex_set(a2)
    for name, a in (("A1", a1), ("A2", a2)):
        if len(a) != tp1:
            raise PreconditionError(f"|{name}|={len(a)} but t+1={tp1}")
        if a[0] < 1 or a[-1] > g.n:
            raise PreconditionError(f"{name} has a vertex outside 1..{g.n}")
        if not is_clique(g, a):
            raise NotACliqueError(f"{name}={a} does not induce K_{tp1}")
    return a1, a2, tp1


def build_gprime(g: UniformHypergraph, a1, a2, params: Parameters) -> tuple[UniformHypergraph, TransformTrace]:
    a1, a2, tp1 = _validate_pair(g, a1, a2, params)
    n, ell = g.n, g.r
    union = set(a1) | set(a2)
    um = to_mask(union)
    c = tuple(range(n + 1, n + tp1 + 1))
    labeling = a1 + c
    b = boundary_set(g, a1, a2)

    kept, link_sizes, removed = set(), {}, []
    a1m, a2m = to_mask(a1), to_mask(a2)
    for m in g.masks:
        inside = m & um
        if inside == m:
            if m & ~a1m == 0 or m & ~a2m == 0:
                kept.add(m)
            else:
                removed.append(from_mask(m))
        elif inside == 0:
            kept.add(m)
        else:
            y = from_mask(m & ~um)
            link_sizes[y] = link_sizes.get(y, 0) + 1

    for y in sorted(link_sizes, key=lambda s: (len(s), s)):
        s = ell - len(y)
        m_y = link_sizes[y]
        assert m_y <= math.comb(2 * tp1, s), "link larger than the A1 ∪ C capacity"
        ym = to_mask(y)
        for idx in initial_segment(m_y, s):
            kept.add(ym | to_mask(labeling[i - 1] for i in idx))

    gprime = UniformHypergraph(n + tp1, ell, frozenset(kept))
    trace = TransformTrace(
        graph_id=_graph_id(g),
        params=params,
        a1=a1,
        a2=a2,
        a=len(set(a1) & set(a2)),
        b=b,
        c=c,
        labeling=labeling,
        g=g,
        gprime=gprime,
        removed_crossing=sort_family(removed),
        link_sizes=link_sizes,
    )
    return gprime, trace


def cascade_labels(trace: TransformTrace) -> dict[int, int]:
    """Original label -> cascade label (V∖(A2∖A1) first, then A2∖A1, then C)."""
    n = trace.g.n
    only2 = sorted(set(trace.a2) - set(trace.a1))
    rest = [v for v in range(1, n + 1) if v not in set(only2)]
    order = rest + only2 + list(trace.c)
    return {v: i for i, v in enumerate(order, start=1)}


def eliminate_c(gprime: UniformHypergraph, trace: TransformTrace) -> UniformHypergraph:
    """Run the shift cascade that pushes edges off C; records steps on the trace."""
    n, tp1 = trace.g.n, len(trace.a1)
    if gprime.n != n + tp1 or gprime != trace.gprime:
        raise PreconditionError("graph does not match the trace it is paired with")
    fwd = cascade_labels(trace)
    back = {i: v for v, i in fwd.items()}
    h = gprime.relabel(fwd)
    steps = []
    for i in range(1, n - tp1 + trace.a + 1):
        for j in range(n + tp1, n, -1):
            h = shift(h, i, j)
            steps.append((i, j))
    out = h.relabel(back)
    trace.shift_labels = fwd
    trace.shift_steps = steps
    trace.gfinal = out
    if out.num_edges != gprime.num_edges:
        raise AssertionError("shifting changed the edge count")
    return out


def g_transform(g: UniformHypergraph, a1, a2, params: Parameters) -> tuple[UniformHypergraph, TransformTrace]:
    gprime, trace = build_gprime(g, a1, a2, params)
    gfinal = eliminate_c(gprime, trace)
    gout = UniformHypergraph(g.n, g.r, frozenset(m for m in gfinal.masks if m < (1 << g.n)))
    trace.gout = gout
    if trace.removed_crossing:
        trace.notes.append(f"{len(trace.removed_crossing)} crossing edge(s) removed while building G'")
    dropped = gfinal.num_edges - gout.num_edges
    if dropped:
        trace.notes.append(f"{dropped} edge(s) still touching C were dropped by the restriction to V")
    trace.properties = verify_properties(trace, params)
    return gout, trace


def shifted_clique(a3: Iterable[int], trace: TransformTrace) -> tuple[int, ...]:
    """(A3 ∖ (A1 ∪ A2)) ∪ {v_1..v_m} with m = |A3 ∩ (A1 ∪ A2)|."""
    a3 = set(a3)
    union = set(trace.a1) | set(trace.a2)
    m = len(a3 & union)
    return tuple(sorted((a3 - union) | set(trace.labeling[:m])))


def verify_properties(trace: TransformTrace, params: Parameters) -> PropertyReport:
    """Check properties (1)-(5) of the transformed graph; failures are reported, not raised."""
    g, gout = trace.g, trace.gout
    if gout is None:
        raise PreconditionError("trace is incomplete: run g_transform first")
    diag: dict = {}

    p1 = gout.n == g.n
    p2 = gout.num_edges <= g.num_edges

    only2 = set(trace.a2) - set(trace.a1)
    o2m, a2m = to_mask(only2), to_mask(trace.a2)
    leaking = [from_mask(m) for m in gout.masks if m & o2m and m & ~a2m]
    not_cliques = [a for a in (trace.a1, trace.a2) if not is_clique(gout, a)]
    p3 = not leaking and not not_cliques
    if leaking:
        diag["edges_leaving_a2"] = [list(e) for e in sort_family(leaking)]
    if not_cliques:
        diag["broken_cliques"] = [list(a) for a in not_cliques]

    bad_shifts = []
    for a3 in cliques(g, len(trace.a1)):
        a4 = shifted_clique(a3, trace)
        if len(a4) != len(a3) or not is_clique(gout, a4):
            bad_shifts.append([list(a3), list(a4)])
    p4 = not bad_shifts
    if bad_shifts:
        diag["clique_shifting_failures"] = bad_shifts

    ok5, prof = check_condition(gout, params)
    if not ok5:
        diag["deficient_vertices"] = list(prof.deficient)

    return PropertyReport(p1, p2, p3, p4, ok5, diag)


def c_cliques(trace: TransformTrace, k: int) -> Family:
    """K_k copies in the post-cascade graph that meet C (expected empty for extremal input)."""
    if trace.gfinal is None:
        raise PreconditionError("trace is incomplete")
    cset = set(trace.c)
    return tuple(d for d in cliques(trace.gfinal, k) if cset & set(d))


def cascade_closure_violations(trace: TransformTrace, k: int) -> list[tuple]:
    """Triples (D, i, j) where D meets C, j ∈ D ∩ C, i ∈ V∖(D ∪ (A2∖A1)) and D - j + i is not a clique."""
    gf = trace.gfinal
    if gf is None:
        raise PreconditionError("trace is incomplete")
    n = trace.g.n
    cset, only2 = set(trace.c), set(trace.a2) - set(trace.a1)
    out = []
    for d in cliques(gf, k):
        dc = cset & set(d)
        if not dc:
            continue
        for j in sorted(dc):
            for i in range(1, n + 1):
                if i in d or i in only2:
                    continue
                moved = tuple(sorted((set(d) - {j}) | {i}))
                if not is_clique(gf, moved):
                    out.append((d, i, j))
    return out


def boundary_clique_counts(trace: TransformTrace, k: int) -> dict[int, tuple[int, int]]:
    """For u ∈ B not in any K_{t+1} of G': (k_u in G via A1 ∪ A2, k'_u in G' via A1 ∪ C)."""
    g, gp = trace.g, trace.gprime
    tp1 = len(trace.a1)
    in_big = set()
    for c in cliques(gp, tp1):
        in_big.update(c)
    union = set(trace.a1) | set(trace.a2)
    a1c = set(trace.a1) | set(trace.c)
    gk, gpk = cliques(g, k), cliques(gp, k)
    out = {}
    for u in trace.b:
        if u in in_big:
            continue
        ku = sum(1 for d in gk if u in d and union & set(d))
        kpu = sum(1 for d in gpk if u in d and a1c & set(d))
        out[u] = (ku, kpu)
    return out


def gprime_condition(trace: TransformTrace, params: Parameters) -> tuple[int, ...]:
    """Vertices of V below the threshold in G' (cliques may use C); expected empty."""
    counts = [0] * (trace.gprime.n + 1)
    for d in cliques(trace.gprime, params.k):
        for v in d:
            counts[v] += 1
    return tuple(v for v in range(1, trace.g.n + 1) if counts[v] < params.threshold)


def _check_case(s1: int, s2: int, t: int, case: int, structural: bool = True):
    if case not in (1, 2):
        raise PreconditionError(f"case must be 1 or 2, got {case}")
    if not (1 <= s1 <= t + 1 and 1 <= s2 <= t + 1):
        raise PreconditionError(f"need 1 <= s1, s2 <= t+1, got s1={s1}, s2={s2}, t={t}")
    if structural and case == 1 and s1 + s2 < t + 1:
        raise PreconditionError("case 1 needs s1 + s2 >= t+1")
    if case == 2 and s1 + s2 >= t + 1:
        raise PreconditionError("case 2 needs s1 + s2 < t+1")


def case_edge_delta(s1: int, s2: int, t: int, ell: int, case: int) -> int:
    """Edge-count change of the merge construction relative to the graph it replaces.

    The case-1 formula is plain arithmetic and is evaluated for any
    1 <= s1, s2 <= t+1; only case 2 needs s1 + s2 < t+1 for its terms to exist.
    """
    _check_case(s1, s2, t, case, structural=case == 2)
    c = math.comb
    if case == 1:
        return c(t + 1 - s1, ell) + c(t + 1 - s2, ell) - c(2 * (t + 1) - s1 - s2, ell)
    return c(t + 1 - s1, ell) + c(t + 1 - s2, ell) - c(t + 1 - s1 - s2, ell) - c(t + 1, ell)


def case_added_edges(s1: int, s2: int, t: int, ell: int, case: int) -> int:
    """Edges the construction adds on top of its base graph."""
    _check_case(s1, s2, t, case)
    c = math.comb
    if case == 1:
        return 2 * c(t + 1, ell) - c(2 * (t + 1) - s1 - s2, ell)
    return c(t + 1, ell) - c(t + 1 - s1 - s2, ell)


def case_removed_edges(s: int, t: int, ell: int) -> int:
    """Edges of a K_{t+1} that touch s of its vertices."""
    return math.comb(t + 1, ell) - math.comb(t + 1 - s, ell)


def case_construct(
    hbase: UniformHypergraph,
    s1: int,
    s2: int,
    params: Parameters,
    case: int,
    a1: Iterable[int] | None = None,
) -> UniformHypergraph:
    """Add s1+s2 new vertices (labels n+1..n+s1+s2) to ``hbase``.

    Case 1 puts two K_{t+1} sharing 2(t+1)-s1-s2 vertices on them.  Case 2
    makes W0 ∪ Q a K_{t+1}, with W0 the antilex-smallest (t+1-s1-s2)-subset of
    ``a1`` (default: the antilex-smallest (t+1)-clique of ``hbase``).
    """
    t, ell = params.t_int, params.ell
    _check_case(s1, s2, t, case)
    if hbase.r != ell:
        raise UniformityError(f"base graph is {hbase.r}-uniform but ell={ell}")
    n, q = hbase.n, s1 + s2
    new = list(range(n + 1, n + q + 1))
    masks = set(hbase.masks)
    if case == 1:
        for block in (new[: t + 1], new[q - (t + 1):]):
            masks.update(to_mask(e) for e in combinations(block, ell))
    else:
        if a1 is None:
            found = cliques(hbase, t + 1)
            if not found:
                raise PreconditionError("case 2 needs a K_{t+1} in the base graph")
            a1 = found[0]
        a1 = vertex_set(a1)
        if len(a1) != t + 1 or not is_clique(hbase, a1):
            raise NotACliqueError(f"A1={a1} is not a (t+1)-clique of the base graph")
        w0 = a1[: t + 1 - q]  # antilex-smallest subset of a clique is its lowest labels
        w = sorted(set(w0) | set(new))
        masks.update(to_mask(e) for e in combinations(w, ell))
    return UniformHypergraph(n + q, ell, frozenset(masks))
