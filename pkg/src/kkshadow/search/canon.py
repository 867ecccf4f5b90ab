"""Canonical labeling of small uniform hypergraphs.

Individualisation–refinement: colour refinement on the vertex/edge incidence,
branch on each vertex of the first non-singleton cell, keep the smallest
relabeled edge list over all leaves.  Branches that differ by a transposition
automorphism (twin vertices) are skipped; no other automorphism pruning is
done, which is fine for n <= 10.
"""

from __future__ import annotations

from ..hypergraph import UniformHypergraph


def _refine(inc, colors):
    n = len(colors)
    while True:
        sigs = [
            (colors[v], tuple(sorted(tuple(sorted(colors[u] for u in others)) for others in inc[v])))
            for v in range(n)
        ]
        uniq = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(uniq)}
        new = [rank[s] for s in sigs]
        if len(uniq) == len(set(colors)):
            return new
        colors = new


def canonical_certificate(h: UniformHypergraph) -> tuple:
    n, r = h.n, h.r
    edges = [tuple(v - 1 for v in e) for e in h.edges]
    inc = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            inc[v].append(tuple(u for u in e if u != v))
    masks = h.masks
    twin_cache: dict[tuple[int, int], bool] = {}

    def swap_is_automorphism(u, v):
        key = (u, v) if u < v else (v, u)
        hit = twin_cache.get(key)
        if hit is None:
            both = (1 << u) | (1 << v)
            hit = True
            for m in masks:
                if (m >> u & 1) != (m >> v & 1) and (m ^ both) not in masks:
                    hit = False
                    break
            twin_cache[key] = hit
        return hit

    best = None

    def search(colors):
        nonlocal best
        colors = _refine(inc, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            cert = tuple(sorted(tuple(sorted(colors[v] + 1 for v in e)) for e in edges))
            if best is None or cert < best:
                best = cert
            return
        tried: list[int] = []
        for v in target:
            if any(swap_is_automorphism(u, v) for u in tried):
                continue
            tried.append(v)
            nxt = [2 * c for c in colors]
            nxt[v] -= 1
            search(nxt)

    search([0] * n)
    return (n, r, best if best is not None else ())


def canonical_form(h: UniformHypergraph) -> UniformHypergraph:
    n, r, edges = canonical_certificate(h)
    return UniformHypergraph.from_edges(n, r, edges)


def canonical_key(h: UniformHypergraph) -> tuple:
    return canonical_certificate(h)
