"""Acceptance gate: one test group per criterion, summarised at the end of the run."""

import io
import itertools
import json
import math
import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from kkshadow.cli import run
from kkshadow.cliquedeg import check_condition, excess_bound, excess_degree_sum
from kkshadow.hypergraph import Parameters, UniformHypergraph, cliques, cliques_containing, components
from kkshadow.order import gen_binomial, kk_min_shadow, lovasz_x
from kkshadow.search import (
    canonical_key,
    construct_counterexample,
    enumerate_extremal,
    exhaustive_oracle,
    has_isolated_clique,
    inspect_graph,
    min_edges,
    theorem_range,
)
from kkshadow.transform import case_edge_delta, g_transform, shift
from strategies import all_graphs

crit = pytest.mark.criterion
C3 = [(3, 2, 3, 2, 3), (6, 2, 3, 2, 6), (7, 2, 3, 2, 8)]
BOWTIE7 = UniformHypergraph.from_edges(7, 2, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)])


# 1 -----------------------------------------------------------------------

def exhaustive_min_shadow(n, k, s, m):
    """Smallest s-shadow over every family of m k-subsets of [n] (bitmask oracle)."""
    ksets = list(combinations(range(n), k))
    smalls = {sub: i for i, sub in enumerate(combinations(range(n), s))}
    masks = [sum(1 << smalls[sub] for sub in combinations(ks, s)) for ks in ksets]
    best = None
    for fam in combinations(masks, m):
        acc = 0
        for x in fam:
            acc |= x
        c = acc.bit_count()
        if best is None or c < best:
            best = c
    return best


@crit(1, "Kruskal-Katona minimum equals exhaustive minimum (n=6, k=3, s=2, m<=6)")
def test_c01_kk_oracle():
    start = time.perf_counter()
    got = [kk_min_shadow(m, 3, 2) for m in range(1, 7)]
    ref = [exhaustive_min_shadow(6, 3, 2, m) for m in range(1, 7)]
    elapsed = time.perf_counter() - start
    print(f"kk={got} oracle={ref} in {elapsed:.2f}s")
    assert got == ref
    assert elapsed < 10


# 2 -----------------------------------------------------------------------

@crit(2, "Lovasz bound never exceeds the discrete minimum; equality iff x is an integer")
def test_c02_lovasz_consistency():
    start = time.perf_counter()
    ineq, eq = [], []
    for k in range(2, 6):
        integral = {math.comb(j, k) for j in range(k, k + 80)}
        for m in range(1, 71):
            x = lovasz_x(m, k)
            for s in range(1, k):
                disc = kk_min_shadow(m, k, s)
                real = gen_binomial(x, s)
                if math.ceil(real - 1e-9) > disc:
                    ineq.append((m, k, s))
                tight = abs(real - disc) <= 1e-9
                if tight != (m in integral):
                    eq.append((m, k, s, real, disc))
    elapsed = time.perf_counter() - start
    print(f"inequality violations={ineq[:5]} equality mismatches={eq[:5]} in {elapsed:.2f}s")
    assert not ineq and not eq
    assert elapsed < 5


# 3 -----------------------------------------------------------------------

@crit(3, "exact optima 3, 6, 8 certified by the exhaustive oracle")
@pytest.mark.parametrize("n,t,k,ell,expected", C3)
def test_c03_exact_optima(n, t, k, ell, expected):
    params = Parameters(n, t, k, ell)
    start = time.perf_counter()
    res = min_edges(params)
    t_search = time.perf_counter() - start
    start = time.perf_counter()
    best, witnesses, _ = exhaustive_oracle(params)
    t_oracle = time.perf_counter() - start
    print(f"n={n}: search {res.optimum} in {t_search:.2f}s, oracle {best} in {t_oracle:.2f}s")
    assert res.optimum == best == expected
    assert canonical_key(res.witnesses[0]) in {canonical_key(w) for w in witnesses}
    assert t_search < 60 and t_oracle < 30 * 60


# 4 -----------------------------------------------------------------------

@crit(4, "some extremal witness has an isolated K3 for (t,k,ell)=(2,3,2), n in {7,8}")
@pytest.mark.parametrize("n", [7, 8])
def test_c04_isolated_clique(n):
    params = Parameters(n, 2, 3, 2)
    res = enumerate_extremal(params)
    thr = theorem_range(params)
    flags = [has_isolated_clique(w, 3) for w in res.witnesses]
    print(f"n={n}: optimum {res.optimum}, {len(flags)} witness(es), isolated={flags}, "
          f"range threshold {thr} ({float(thr)}), in range={n > thr}")
    assert any(flags)


# 5 -----------------------------------------------------------------------

@crit(5, "excess degree sum within the bound on every witness")
@pytest.mark.parametrize("n,t,k,ell,expected", C3)
def test_c05_excess(n, t, k, ell, expected):
    res = enumerate_extremal(Parameters(n, t, k, ell))
    bound = excess_bound(t, ell)
    sums = [excess_degree_sum(w, t) for w in res.witnesses]
    print(f"n={n}: excess {[str(s) for s in sums]} <= {bound}")
    assert res.witnesses and all(s <= bound for s in sums)
    if n == 7:
        assert sums == [2] and bound == Fraction(9, 4)


# 6 -----------------------------------------------------------------------

@crit(6, "no crossing edges and at most one intersecting clique pair on every witness")
@pytest.mark.parametrize("n,t,k,ell,expected", C3)
def test_c06_crossing_and_pairs(n, t, k, ell, expected):
    params = Parameters(n, t, k, ell)
    res = enumerate_extremal(params)
    reps = [inspect_graph(w, params) for w in res.witnesses]
    print(f"n={n}: crossing={[r.crossing for r in reps]} pairs={[len(r.intersecting_pairs) for r in reps]}")
    assert reps and all(r.crossing_free and r.at_most_one_intersecting for r in reps)


# 7 -----------------------------------------------------------------------

@crit(7, "transform of the (7,2,3,2) witness: five properties, 8 edges, A2 isolated")
def test_c07_transform():
    params = Parameters(7, 2, 3, 2)
    (w,) = enumerate_extremal(params).witnesses
    assert canonical_key(w) == canonical_key(BOWTIE7)
    start = time.perf_counter()
    gout, tr = g_transform(BOWTIE7, [1, 2, 3], [4, 5, 6], params)
    elapsed = time.perf_counter() - start
    print(f"properties={tr.properties.flags} edges={tr.edge_counts} in {elapsed * 1000:.1f} ms")
    assert tr.properties.all_true
    assert gout.num_edges == BOWTIE7.num_edges == 8
    assert (4, 5, 6) in components(gout) and has_isolated_clique(gout, 3)
    assert elapsed < 1


# 8 -----------------------------------------------------------------------

def k3_count(h, u):
    return len(cliques_containing(h, u, 3))


def shift_violations(h, i, j):
    s = shift(h, i, j)
    return [u for u in h.vertices if u != j and k3_count(s, u) < k3_count(h, u)]


@crit(8, "shifting never lowers a triangle count away from j")
def test_c08_lemma14_random():
    rng = random.Random(14)
    bad = []
    for _ in range(10_000):
        n = rng.randint(3, 7)
        pool = list(combinations(range(1, n + 1), 2))
        p = rng.random()
        h = UniformHypergraph.from_edges(n, 2, [e for e in pool if rng.random() < p])
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        u = rng.choice([v for v in range(1, n + 1) if v != j])
        if k3_count(shift(h, i, j), u) < k3_count(h, u):
            bad.append((h, i, j, u))
    print(f"random sweep: {len(bad)} violation(s) in 10000 instances (seed 14)")
    assert not bad


@crit(8, "shifting never lowers a triangle count away from j")
def test_c08_lemma14_exhaustive():
    bad = 0
    checked = 0
    for n in range(2, 6):
        for h in all_graphs(n):
            for i, j in combinations(range(1, n + 1), 2):
                bad += len(shift_violations(h, i, j))
                checked += 1
    print(f"exhaustive sweep: {checked} (H, i, j) triples, {bad} violation(s)")
    assert bad == 0


# 9 -----------------------------------------------------------------------

@crit(9, "K6 minus a perfect matching: 12 edges, 4-regular, 4 triangles each, extremal at t=16/5")
def test_c09_counterexample():
    h = construct_counterexample(4, 1)
    assert h.num_edges == 12
    assert h.degrees() == [4] * 6
    assert [k3_count(h, v) for v in h.vertices] == [4] * 6
    params = Parameters(6, Fraction(16, 5), 3, 2)
    assert params.threshold == 4
    start = time.perf_counter()
    res = enumerate_extremal(params)
    elapsed = time.perf_counter() - start
    print(f"optimum {res.optimum}, {len(res.witnesses)} witness(es) in {elapsed:.2f}s")
    assert res.optimum == 12
    assert canonical_key(h) in {canonical_key(w) for w in res.witnesses}
    assert check_condition(h, params)[0]
    assert elapsed < 60


# 10 ----------------------------------------------------------------------

@crit(10, "merge edge deltas strictly negative for t<=8, ell in {2,3}")
def test_c10_spot_values():
    assert case_edge_delta(2, 2, 4, 2, 1) == -9
    assert case_edge_delta(1, 1, 4, 2, 2) == -1


@crit(10, "merge edge deltas strictly negative for t<=8, ell in {2,3}")
@pytest.mark.parametrize("ell", [2, 3])
def test_c10_negativity_sweep(ell):
    # domain: t >= ell (forced by t >= k-1 >= ell), 1 <= s1, s2 <= t+1, case fixed by s1 + s2 vs t+1
    nonneg = []
    total = 0
    for t in range(ell, 9):
        for s1, s2 in itertools.product(range(1, t + 2), repeat=2):
            case = 1 if s1 + s2 >= t + 1 else 2
            d = case_edge_delta(s1, s2, t, ell, case)
            total += 1
            if d >= 0:
                nonneg.append((s1, s2, t, case, d))
    print(f"ell={ell}: {len(nonneg)} of {total} deltas are >= 0, e.g. {nonneg[:4]}")
    assert not nonneg


# 11 ----------------------------------------------------------------------

def report(argv):
    buf = io.StringIO()
    assert run(argv, out=buf) == 0
    return buf.getvalue()


@crit(11, "reports are byte-identical at --jobs 1 and --jobs 8")
@pytest.mark.parametrize(
    "argv",
    [
        ["search", "--n", "3", "--t", "2", "--k", "3", "--ell", "2", "--certify"],
        ["search", "--n", "6", "--t", "2", "--k", "3", "--ell", "2", "--certify"],
        ["search", "--n", "7", "--t", "2", "--k", "3", "--ell", "2", "--certify"],
        ["search", "--n", "7", "--t", "2", "--k", "3", "--ell", "2", "--enumerate"],
        ["search", "--n", "8", "--t", "2", "--k", "3", "--ell", "2", "--enumerate"],
        ["census", "--t", "2", "--k", "3", "--ell", "2", "--n", "7,8"],
    ],
    ids=["c3-n3", "c3-n6", "c3-n7", "c4-n7", "c4-n8", "c4-census"],
)
def test_c11_determinism(argv):
    one = report(["--no-timing", *argv, "--jobs", "1"])
    eight = report(["--no-timing", *argv, "--jobs", "8"])
    print(f"{' '.join(argv)}: {len(one)} bytes, sha equal={one == eight}")
    assert one == eight
    assert json.loads(one)["provenance"]["elapsed_ms"] is None
