"""Uniform hypergraphs on the labeled vertex set ``1..n``.

Each edge is stored as an int bitmask with bit ``v - 1`` standing for vertex
``v``.  Graph values are immutable; every operation builds a new one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidTargetError, OverlapError, PreconditionError, UniformityError
from .order import Family, as_rational, colex_key, gen_binomial, sort_family


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def vertex_set(s: Iterable[int]) -> tuple[int, ...]:
    """Normalize to a strictly increasing tuple; duplicates are rejected."""
    t = tuple(sorted(s))
    if len(set(t)) != len(t):
        raise PreconditionError(f"duplicate vertices in {list(s)}")
    return t


@dataclass(frozen=True)
class Parameters:
    """The tuple (n, t, k, ell): ell-graphs on n vertices, each vertex in >= C(t, k-1) copies of K_k^ell."""

    n: int
    t: Fraction
    k: int
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "t", as_rational(self.t))
        if self.n < 1:
            raise PreconditionError(f"n must be >= 1, got {self.n}")
        if not self.k > self.ell >= 2:
            raise PreconditionError(f"need k > ell >= 2, got k={self.k}, ell={self.ell}")
        if self.t < self.k - 1:
            raise PreconditionError(f"need t >= k-1, got t={self.t}, k={self.k}")

    @property
    def t_is_integer(self) -> bool:
        return self.t.denominator == 1

    @property
    def t_int(self) -> int:
        if not self.t_is_integer:
            raise PreconditionError(f"t={self.t} is not an integer")
        return self.t.numerator

    @property
    def clique_target(self) -> Fraction:
        return gen_binomial(self.t, self.k - 1)

    @property
    def threshold(self) -> int:
        """Integer clique-count threshold, ceil(C(t, k-1))."""
        return math.ceil(self.clique_target)


@dataclass(frozen=True)
class UniformHypergraph:
    n: int
    r: int
    masks: frozenset

    def __post_init__(self):
        if self.n < 0 or self.r < 1:
            raise PreconditionError(f"bad shape n={self.n}, r={self.r}")
        limit = 1 << self.n
        for m in self.masks:
            if m <= 0 or m >= limit or m.bit_count() != self.r:
                raise UniformityError(
                    f"edge {from_mask(m) if m > 0 else m} is not an {self.r}-subset of 1..{self.n}"
                )

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> "UniformHypergraph":
        masks = set()
        for e in edges:
            e = tuple(e)
            if len(set(e)) != len(e) or len(e) != r:
                raise UniformityError(f"edge {e} does not have {r} distinct vertices")
            if any(not 1 <= v <= n for v in e):
                raise PreconditionError(f"edge {e} has a vertex outside 1..{n}")
            m = to_mask(e)
            if m in masks:
                raise PreconditionError(f"duplicate edge {tuple(sorted(e))}")
            masks.add(m)
        return cls(n, r, frozenset(masks))

    @classmethod
    def complete(cls, n: int, r: int, vertices: Iterable[int] | None = None) -> "UniformHypergraph":
        vs = range(1, n + 1) if vertices is None else vertex_set(vertices)
        return cls(n, r, frozenset(to_mask(e) for e in combinations(vs, r)))

    @cached_property
    def edges(self) -> Family:
        return tuple(sorted((from_mask(m) for m in self.masks), key=colex_key))

    @property
    def num_edges(self) -> int:
        return len(self.masks)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def has_edge(self, e: Iterable[int]) -> bool:
        return to_mask(e) in self.masks

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg[1:]

    def relabel(self, mapping: dict[int, int], n: int | None = None) -> "UniformHypergraph":
        """Apply a vertex map old -> new (must be injective on edge vertices)."""
        n = self.n if n is None else n
        return UniformHypergraph.from_edges(n, self.r, ([mapping[v] for v in e] for e in self.edges))

    def _check_vertices(self, s: Sequence[int]):
        for v in s:
            if not 1 <= v <= self.n:
                raise PreconditionError(f"vertex {v} outside 1..{self.n}")

    def __repr__(self) -> str:
        return f"UniformHypergraph(n={self.n}, r={self.r}, edges={list(self.edges)})"


def shadow(family: Iterable[Iterable[int]], s: int) -> Family:
    """All ``s``-sets contained in at least one member of ``family``."""
    fam = [tuple(a) for a in family]
    if s < 0:
        raise InvalidTargetError(f"shadow size must be >= 0, got {s}")
    if fam:
        r = max(len(a) for a in fam)
        if s > min(len(a) for a in fam):
            raise InvalidTargetError(f"shadow size {s} exceeds member size {r}")
    return sort_family(sub for a in fam for sub in combinations(sorted(a), s))


def link(h: UniformHypergraph, y: Iterable[int], s: Iterable[int]) -> UniformHypergraph:
    """The (r-|y|)-graph on ``s`` with edges ``{A ⊆ s : A ∪ y ∈ E(h)}``.

    Vertex labels are kept from ``h`` (the result lives on 1..n with all edges inside ``s``).
    """
    y, s = vertex_set(y), vertex_set(s)
    h._check_vertices(y)
    h._check_vertices(s)
    if set(y) & set(s):
        raise OverlapError(f"Y={y} and S={s} overlap")
    if len(y) >= h.r:
        raise UniformityError(f"|Y|={len(y)} must be below the uniformity {h.r}")
    ym, sm = to_mask(y), to_mask(s)
    out = frozenset(m & ~ym for m in h.masks if m & ym == ym and (m & ~ym) & ~sm == 0)
    return UniformHypergraph(h.n, h.r - len(y), out)


def degree(h: UniformHypergraph, s: Iterable[int]) -> int:
    """Number of edges containing ``s``; 0 when ``|s| > r``."""
    s = vertex_set(s)
    h._check_vertices(s)
    if len(s) > h.r:
        return 0
    sm = to_mask(s)
    return sum(1 for m in h.masks if m & sm == sm)


def neighborhood(h: UniformHypergraph, s: Iterable[int]) -> tuple[int, ...]:
    s = vertex_set(s)
    h._check_vertices(s)
    sm = to_mask(s)
    acc = 0
    for m in h.masks:
        if m & sm:
            acc |= m
    return from_mask(acc & ~sm)


def induced(h: UniformHypergraph, s: Iterable[int]) -> tuple[UniformHypergraph, dict[int, int]]:
    """Subgraph on ``s`` relabeled to 1..|s|; also returns the map new -> old label."""
    s = vertex_set(s)
    h._check_vertices(s)
    sm = to_mask(s)
    label_map = {i: v for i, v in enumerate(s, start=1)}
    back = {v: i for i, v in label_map.items()}
    edges = [[back[v] for v in from_mask(m)] for m in h.masks if m & ~sm == 0]
    return UniformHypergraph.from_edges(len(s), h.r, edges), label_map


def restrict(h: UniformHypergraph, s: Iterable[int]) -> UniformHypergraph:
    """Edges of ``h`` inside ``s``, keeping the original labels and ``n``."""
    sm = to_mask(vertex_set(s))
    return UniformHypergraph(h.n, h.r, frozenset(m for m in h.masks if m & ~sm == 0))


def is_clique(h: UniformHypergraph, s: Iterable[int]) -> bool:
    s = vertex_set(s)
    h._check_vertices(s)
    if len(s) < h.r:
        return True
    masks = h.masks
    return all(to_mask(e) in masks for e in combinations(s, h.r))


def cliques(h: UniformHypergraph, size: int, within: Iterable[int] | None = None) -> Family:
    """All ``size``-subsets (of ``within``, default all vertices) that are cliques."""
    pool = h.vertices if within is None else vertex_set(within)
    if size < 0:
        return ()
    r, masks = h.r, h.masks
    out = []

    def extend(cur: list[int], start: int):
        if len(cur) == size:
            out.append(tuple(cur))
            return
        for idx in range(start, len(pool)):
            if len(pool) - idx < size - len(cur):
                return
            w = pool[idx]
            if len(cur) + 1 >= r:
                wbit = 1 << (w - 1)
                if not all(to_mask(sub) | wbit in masks for sub in combinations(cur, r - 1)):
                    continue
            cur.append(w)
            extend(cur, idx + 1)
            cur.pop()

    extend([], 0)
    return sort_family(out)


def cliques_containing(h: UniformHypergraph, v: int, k: int) -> Family:
    """All ``k``-cliques of ``h`` through ``v``; their number is v's clique degree."""
    h._check_vertices([v])
    if k < h.r:
        raise UniformityError(f"clique order k={k} is below the uniformity {h.r}")
    pool = neighborhood(h, [v]) if h.r >= 2 else tuple(u for u in h.vertices if u != v)
    vbit = 1 << (v - 1)
    if h.r == 1 and vbit not in h.masks:
        return ()
    out = []
    for rest in combinations(pool, k - 1):
        cand = tuple(sorted((v,) + rest))
        if is_clique(h, cand):
            out.append(cand)
    return sort_family(out)


def clique_degrees(h: UniformHypergraph, k: int) -> list[int]:
    """Per-vertex count of K_k^r copies (index 0 is vertex 1)."""
    counts = [0] * h.n
    for c in cliques(h, k):
        for v in c:
            counts[v - 1] += 1
    return counts


def components(h: UniformHypergraph) -> list[tuple[int, ...]]:
    """Connected components (isolated vertices are singleton components)."""
    parent = list(range(h.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        root = find(e[0])
        for v in e[1:]:
            rv = find(v)
            if rv != root:
                parent[rv] = root
    groups: dict[int, list[int]] = {}
    for v in h.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def disjoint_union(*graphs: UniformHypergraph) -> UniformHypergraph:
    if not graphs:
        raise PreconditionError("need at least one graph")
    r = graphs[0].r
    edges, offset = [], 0
    for g in graphs:
        if g.r != r:
            raise UniformityError("mixed uniformities in disjoint union")
        edges.extend([v + offset for v in e] for e in g.edges)
        offset += g.n
    return UniformHypergraph.from_edges(offset, r, edges)
