"""Explicit graph families: the upper-bound construction, the even-ceiling
counterexample, and the isolated-clique test."""

from __future__ import annotations

import math
from itertools import combinations

from ..errors import PreconditionError
from ..hypergraph import UniformHypergraph, components, to_mask


def construct_upper(n: int, t: int, ell: int) -> UniformHypergraph:
    """q-1 disjoint K_{t+1}^ell plus two K_{t+1}^ell sharing t+1-r vertices, n = q(t+1) + r.

    Vertices are laid out left to right: the disjoint copies on 1..(q-1)(t+1),
    then the overlapping pair on the remaining t+1+r vertices.
    """
    if not isinstance(t, int) or t < 1:
        raise PreconditionError(f"t must be a positive integer, got {t!r}")
    if n < t + 1:
        raise PreconditionError(f"need n >= t+1, got n={n}, t={t}")
    q, r = divmod(n, t + 1)
    masks = set()
    base = 0
    for _ in range(q - 1):
        masks.update(to_mask(e) for e in combinations(range(base + 1, base + t + 2), ell))
        base += t + 1
    for start in (base + 1, base + 1 + r):
        masks.update(to_mask(e) for e in combinations(range(start, start + t + 1), ell))
    return UniformHypergraph(n, ell, frozenset(masks))


def upper_edge_count(n: int, t: int, ell: int) -> int:
    """|E| of :func:`construct_upper` from the handshake identity."""
    q, r = divmod(n, t + 1)
    total = n * math.comb(t, ell - 1) + (t + 1 - r) * (math.comb(t, ell - 1) - math.comb(t - r, ell - 1))
    assert total % ell == 0
    return total // ell


def construct_counterexample(tceil: int, copies: int = 1) -> UniformHypergraph:
    """Disjoint copies of K_{tceil+2} minus a perfect matching (a 2-graph)."""
    if tceil < 2 or tceil % 2:
        raise PreconditionError(f"tceil must be an even integer >= 2, got {tceil}")
    if copies < 1:
        raise PreconditionError(f"copies must be >= 1, got {copies}")
    size = tceil + 2
    edges = []
    for c in range(copies):
        off = c * size
        for u, v in combinations(range(1, size + 1), 2):
            if not (u % 2 == 1 and v == u + 1):
                edges.append((u + off, v + off))
    return UniformHypergraph.from_edges(size * copies, 2, edges)


def has_isolated_clique(h: UniformHypergraph, size: int) -> bool:
    """True iff some connected component is a complete r-graph on exactly ``size`` vertices."""
    if size < 1:
        return False
    for comp in components(h):
        if len(comp) != size:
            continue
        cm = to_mask(comp)
        inside = sum(1 for m in h.masks if m & ~cm == 0)
        if inside == math.comb(size, h.r):
            return True
    return False
