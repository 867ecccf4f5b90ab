"""Clique-degree condition, the edge and excess-degree bounds, and link-clique sets.

An ell-graph satisfies the condition for (t, k) when every vertex lies in at
least ``ceil(C(t, k-1))`` copies of K_k^ell.  For integer t the ceiling is a
no-op; for real t it is the natural reading since copy counts are integers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import OverlapError, PreconditionError, UniformityError
from .hypergraph import (
    Parameters,
    UniformHypergraph,
    clique_degrees,
    is_clique,
    to_mask,
    vertex_set,
)
from .order import Family, as_rational, gen_binomial, kk_min_shadow, sort_family


@dataclass(frozen=True)
class CliqueDegreeProfile:
    counts: tuple[int, ...]
    t: Fraction
    k: int
    ell: int
    threshold: int

    @property
    def deficient(self) -> tuple[int, ...]:
        """Vertices (1-based) below the threshold."""
        return tuple(v for v, c in enumerate(self.counts, start=1) if c < self.threshold)

    @property
    def satisfied(self) -> bool:
        return not self.deficient


def check_condition(h: UniformHypergraph, params: Parameters) -> tuple[bool, CliqueDegreeProfile]:
    if h.r != params.ell:
        raise UniformityError(f"graph is {h.r}-uniform but ell={params.ell}")
    counts = tuple(clique_degrees(h, params.k))
    prof = CliqueDegreeProfile(counts, params.t, params.k, params.ell, params.threshold)
    return prof.satisfied, prof


def min_degree(t, k: int, ell: int) -> int:
    """Least vertex degree compatible with the condition.

    A vertex link is an (ell-1)-graph that must host ceil(C(t,k-1)) copies of
    K_{k-1}^{ell-1}; by Kruskal–Katona the fewest link edges doing so is the
    (ell-1)-shadow of the antilex initial segment.  Equals C(t, ell-1) for integer t.
    """
    thr = math.ceil(gen_binomial(as_rational(t), k - 1))
    return kk_min_shadow(thr, k - 1, ell - 1)


def edge_lower_bound(n: int, t, ell: int) -> Fraction:
    """(n / ell) * C(t, ell-1)."""
    t = as_rational(t)
    if t < ell - 1:
        raise PreconditionError(f"need t >= ell-1, got t={t}")
    return Fraction(n, ell) * gen_binomial(t, ell - 1)


def excess_degree_sum(h: UniformHypergraph, t) -> Fraction:
    """Sum over vertices of deg(v) - C(t, ell-1)."""
    base = gen_binomial(as_rational(t), h.r - 1)
    return sum((Fraction(d) - base for d in h.degrees()), Fraction(0))


def excess_bound(t, ell: int) -> Fraction:
    """(1/4)(t+1)^2 C(t-1, ell-2)."""
    t = as_rational(t)
    if t < ell - 1:
        raise PreconditionError(f"need t >= ell-1, got t={t}")
    return Fraction(1, 4) * (t + 1) ** 2 * gen_binomial(t - 1, ell - 2)


def binomial_telescope(N: int, k: int, r: int) -> int:
    """sum_{i=1}^{r} C(N-i, k-1), checked against C(N,k) - C(N-r,k)."""
    if not 0 <= r <= N or k < 1:
        raise PreconditionError(f"need 0 <= r <= N and k >= 1, got N={N}, k={k}, r={r}")
    total = sum(math.comb(N - i, k - 1) for i in range(1, r + 1))
    assert total == math.comb(N, k) - math.comb(N - r, k)
    return total


def complete_link_sets(h: UniformHypergraph, y: Iterable[int], ground: Iterable[int], size: int) -> Family:
    """All ``size``-subsets S of ``ground`` whose link under ``y`` is complete on S."""
    y, ground = vertex_set(y), vertex_set(ground)
    if set(y) & set(ground):
        raise OverlapError(f"Y={y} meets the ground set")
    if len(y) >= h.r:
        raise UniformityError(f"|Y|={len(y)} must be below the uniformity {h.r}")
    s = h.r - len(y)
    if size < s:
        warnings.warn(
            f"size {size} < {s}: link completeness is only defined for sets of size >= r-|Y|",
            stacklevel=2,
        )
        return ()
    ym, masks = to_mask(y), h.masks
    out = [
        S
        for S in combinations(ground, size)
        if all(to_mask(a) | ym in masks for a in combinations(S, s))
    ]
    return sort_family(out)


def clique_extensions(h: UniformHypergraph, x: Iterable[int], ground: Iterable[int], k: int) -> Family:
    """All T ⊆ ground with |T| = k - |x| such that T ∪ x induces K_k."""
    x, ground = vertex_set(x), vertex_set(ground)
    if len(x) > k:
        raise PreconditionError(f"|X|={len(x)} exceeds k={k}")
    if set(x) & set(ground):
        raise OverlapError(f"X={x} meets the ground set")
    out = [T for T in combinations(ground, k - len(x)) if is_clique(h, T + x)]
    return sort_family(out)


def degree_partition(h: UniformHypergraph, t, k: int | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(V1, V2): vertices at exactly the minimum admissible degree, and the rest.

    ``k`` is needed only for non-integer t.
    """
    t = as_rational(t)
    if t.denominator == 1:
        d = math.comb(t.numerator, h.r - 1)
    else:
        if k is None:
            raise PreconditionError("degree_partition needs k when t is not an integer")
        d = min_degree(t, k, h.r)
    deg = h.degrees()
    v1 = tuple(v for v in h.vertices if deg[v - 1] == d)
    v2 = tuple(v for v in h.vertices if deg[v - 1] != d)
    return v1, v2
