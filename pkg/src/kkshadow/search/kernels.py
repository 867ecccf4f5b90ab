"""Hot loops for the extremal search.

A graph on the fixed edge universe (all ell-subsets of [n], antilex order) is
an int64 bitmask over edge indices, so ``M = C(n, ell)`` must stay below 63.
``kset_masks[K]`` is the edge-mask of the K-th k-subset's ell-subsets and
``vert_ksets[v]`` lists the k-subsets through vertex v (0-based).

``bnb_kernel`` and ``scan_kernel`` are numba-compiled unless
``KKSHADOW_NO_JIT`` is set; ``scan_numpy`` is an independent vectorised
implementation of the exhaustive scan used as the no-JIT path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .._accel import USE_JIT, jit
from ..hypergraph import UniformHypergraph, to_mask
from ..order import colex_key

MAX_EDGE_UNIVERSE = 62


@dataclass(frozen=True)
class Tables:
    n: int
    k: int
    ell: int
    edges: tuple  # ell-subsets in antilex order
    edge_verts: np.ndarray  # (M, ell) int64, 0-based
    kset_masks: np.ndarray  # (K,) int64
    vert_ksets: np.ndarray  # (n, P) int64
    incidence: np.ndarray  # (K, n) int32

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def to_graph(self, mask: int) -> UniformHypergraph:
        mask = int(mask)
        return UniformHypergraph(
            self.n, self.ell, frozenset(to_mask(e) for i, e in enumerate(self.edges) if mask >> i & 1)
        )

    def to_mask(self, h: UniformHypergraph) -> int:
        index = {to_mask(e): i for i, e in enumerate(self.edges)}
        out = 0
        for m in h.masks:
            out |= 1 << index[m]
        return out


@lru_cache(maxsize=64)
def build_tables(n: int, k: int, ell: int) -> Tables:
    edges = tuple(sorted(combinations(range(1, n + 1), ell), key=colex_key))
    if len(edges) > MAX_EDGE_UNIVERSE:
        raise ValueError(f"C({n},{ell}) = {len(edges)} edges exceeds the 62-bit universe")
    index = {e: i for i, e in enumerate(edges)}
    edge_verts = np.array([[v - 1 for v in e] for e in edges], dtype=np.int64).reshape(len(edges), ell)
    ksets = list(combinations(range(1, n + 1), k))
    kset_masks = np.zeros(len(ksets), dtype=np.int64)
    incidence = np.zeros((len(ksets), n), dtype=np.int32)
    per_vertex: list[list[int]] = [[] for _ in range(n)]
    for q, ks in enumerate(ksets):
        m = 0
        for e in combinations(ks, ell):
            m |= 1 << index[e]
        kset_masks[q] = m
        for v in ks:
            incidence[q, v - 1] = 1
            per_vertex[v - 1].append(q)
    width = math.comb(n - 1, k - 1) if n >= 1 else 0
    vert_ksets = np.array(per_vertex, dtype=np.int64).reshape(n, width)
    return Tables(n, k, ell, edges, edge_verts, kset_masks, vert_ksets, incidence)


@jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@jit
def vertex_ok(g, v, kset_masks, vert_ksets, thr):
    cnt = 0
    for p in range(vert_ksets.shape[1]):
        km = kset_masks[vert_ksets[v, p]]
        if g & km == km:
            cnt += 1
            if cnt >= thr:
                return True
    return False


@jit
def _viable(i, g, c, full, deg_now, deg_max, kset_masks, vert_ksets, thr, dmin, ell, best, collect_ties, sym_break):
    n = deg_now.shape[0]
    need = 0
    for v in range(n):
        if deg_max[v] < dmin:
            return False
        if deg_now[v] < dmin:
            need += dmin - deg_now[v]
    lb = c + (need + ell - 1) // ell
    if collect_ties:
        if lb > best:
            return False
    elif lb >= best:
        return False
    if sym_break:
        # labelings with non-increasing degrees represent every isomorphism class
        for v in range(n - 1):
            if deg_max[v] < deg_now[v + 1]:
                return False
    low = (np.int64(1) << i) - 1
    avail = g | (full & ~low)
    for v in range(n):
        if not vertex_ok(avail, v, kset_masks, vert_ksets, thr):
            return False
    return True


@jit
def bnb_kernel(prefix, depth0, edge_verts, kset_masks, vert_ksets, thr, dmin, best, collect_ties, sym_break, sols):
    """Depth-first include/exclude search below a fixed assignment of the first ``depth0`` edges.

    Returns ``(best, nsol, nodes, overflow)``; ``sols[:nsol]`` hold the masks
    attaining ``best`` (all of them when ``collect_ties``, else the last improvement).
    """
    n = vert_ksets.shape[0]
    M = edge_verts.shape[0]
    ell = edge_verts.shape[1]
    full = (np.int64(1) << M) - 1
    deg_now = np.zeros(n, np.int64)
    deg_max = np.zeros(n, np.int64)
    for e in range(M):
        for q in range(ell):
            deg_max[edge_verts[e, q]] += 1
    g = np.int64(0)
    c = 0
    for e in range(depth0):
        if (prefix >> e) & 1:
            g |= np.int64(1) << e
            c += 1
            for q in range(ell):
                deg_now[edge_verts[e, q]] += 1
        else:
            for q in range(ell):
                deg_max[edge_verts[e, q]] -= 1

    state = np.zeros(M + 2, np.int64)
    nsol = 0
    nodes = 0
    i = depth0
    state[i] = 0
    while i >= depth0:
        s = state[i]
        if s == 0:
            nodes += 1
            ok = _viable(i, g, c, full, deg_now, deg_max, kset_masks, vert_ksets, thr, dmin, ell, best,
                         collect_ties, sym_break)
            if ok and i == M:
                if c < best:
                    best = c
                    nsol = 0
                if nsol >= sols.shape[0]:
                    return best, nsol, nodes, True
                sols[nsol] = g
                nsol += 1
                ok = False
            if not ok:
                i -= 1
                continue
            state[i] = 1
            for q in range(ell):
                deg_max[edge_verts[i, q]] -= 1
            i += 1
            state[i] = 0
        elif s == 1:
            for q in range(ell):
                deg_max[edge_verts[i, q]] += 1
                deg_now[edge_verts[i, q]] += 1
            g |= np.int64(1) << i
            c += 1
            state[i] = 2
            i += 1
            state[i] = 0
        else:
            g &= ~(np.int64(1) << i)
            c -= 1
            for q in range(ell):
                deg_now[edge_verts[i, q]] -= 1
            i -= 1
    return best, nsol, nodes, False


@jit
def scan_kernel(M, kset_masks, vert_ksets, thr, sols):
    """Exhaustive scan of all 2^M graphs; returns ``(best, nsol)`` with optimal masks in ``sols``."""
    n = vert_ksets.shape[0]
    best = M + 1
    nsol = 0
    total = np.int64(1) << M
    g = np.int64(0)
    while g < total:
        c = popcount(g)
        if c <= best:
            ok = True
            for v in range(n):
                if not vertex_ok(g, v, kset_masks, vert_ksets, thr):
                    ok = False
                    break
            if ok:
                if c < best:
                    best = c
                    nsol = 0
                if nsol < sols.shape[0]:
                    sols[nsol] = g
                nsol += 1
        g += 1
    return best, nsol


def scan_numpy(M: int, kset_masks: np.ndarray, incidence: np.ndarray, thr: int, chunk: int = 1 << 14):
    """Vectorised exhaustive scan; returns ``(best, masks)``."""
    best = M + 1
    found: list[np.ndarray] = []
    total = 1 << M
    for start in range(0, total, chunk):
        g = np.arange(start, min(start + chunk, total), dtype=np.int64)
        pc = np.bitwise_count(g).astype(np.int64)
        keep = pc <= best
        g, pc = g[keep], pc[keep]
        if g.size == 0:
            continue
        inside = (g[:, None] & kset_masks[None, :]) == kset_masks[None, :]
        counts = inside.astype(np.int32) @ incidence
        ok = (counts >= thr).all(axis=1)
        if not ok.any():
            continue
        low = int(pc[ok].min())
        if low < best:
            best = low
            found = []
        if low == best:
            found.append(g[ok & (pc == best)])
    masks = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
    return best, masks


def run_bnb(tables: Tables, prefix: int, depth: int, thr: int, dmin: int, best: int,
            collect_ties: bool, sym_break: bool = True, cap: int = 4096):
    """Call the search kernel, growing the solution buffer on overflow."""
    while True:
        sols = np.zeros(cap, dtype=np.int64)
        b, nsol, nodes, overflow = bnb_kernel(
            np.int64(prefix), depth, tables.edge_verts, tables.kset_masks, tables.vert_ksets,
            thr, dmin, best, collect_ties, sym_break, sols,
        )
        if not overflow:
            return int(b), [int(x) for x in sols[:nsol]], int(nodes)
        cap *= 4


def run_scan(tables: Tables, thr: int, use_jit: bool | None = None):
    """Exhaustive scan; returns ``(best, masks)`` with best = M+1 when nothing is feasible."""
    use_jit = USE_JIT if use_jit is None else use_jit
    M = tables.num_edges
    if not use_jit:
        best, masks = scan_numpy(M, tables.kset_masks, tables.incidence, thr)
        return int(best), [int(x) for x in masks]
    cap = 4096
    while True:
        sols = np.zeros(cap, dtype=np.int64)
        best, nsol = scan_kernel(M, tables.kset_masks, tables.vert_ksets, thr, sols)
        if nsol <= cap:
            return int(best), [int(x) for x in sols[:nsol]]
        cap = int(nsol)
