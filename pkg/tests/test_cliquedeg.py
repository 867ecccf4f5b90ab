import math
from fractions import Fraction
from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kkshadow.cliquedeg import (
    binomial_telescope,
    check_condition,
    clique_extensions,
    complete_link_sets,
    degree_partition,
    edge_lower_bound,
    excess_bound,
    excess_degree_sum,
    min_degree,
)
from kkshadow.errors import PreconditionError, UniformityError
from kkshadow.hypergraph import Parameters, UniformHypergraph, disjoint_union
from kkshadow.order import gen_binomial
from kkshadow.search.constructions import construct_counterexample
from strategies import all_graphs, hypergraphs

K3 = UniformHypergraph.complete(3, 2)
K4 = UniformHypergraph.complete(4, 2)
BOWTIE7 = UniformHypergraph.from_edges(7, 2, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)])


def subsets(xs):
    return chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))


def test_check_condition_examples():
    ok, prof = check_condition(K4, Parameters(4, 2, 3, 2))
    assert ok and prof.counts == (3, 3, 3, 3)
    path = UniformHypergraph.from_edges(3, 2, [(1, 2), (2, 3)])
    ok, prof = check_condition(path, Parameters(3, 2, 3, 2))
    assert not ok and prof.deficient == (1, 2, 3)
    ok, prof = check_condition(construct_counterexample(4), Parameters(6, Fraction(16, 5), 3, 2))
    assert ok and prof.threshold == 4 and prof.counts == (4,) * 6
    with pytest.raises(UniformityError):
        check_condition(K4, Parameters(4, 3, 4, 3))


def test_edge_lower_bound():
    assert edge_lower_bound(6, 2, 2) == 6
    assert edge_lower_bound(7, 2, 2) == 7
    for t in range(2, 6):
        for ell in range(2, t + 1):
            for q in range(1, 4):
                copies = disjoint_union(*[UniformHypergraph.complete(t + 1, ell)] * q)
                assert edge_lower_bound((t + 1) * q, t, ell) == copies.num_edges


def test_excess_examples():
    two = disjoint_union(K3, K3)
    assert excess_degree_sum(two, 2) == 0
    assert excess_degree_sum(K4, 2) == 4
    assert excess_degree_sum(BOWTIE7, 2) == 2
    assert excess_bound(2, 2) == Fraction(9, 4)
    assert excess_bound(4, 3) == Fraction(75, 4)
    for t in range(1, 8):
        assert excess_bound(t, 2) == Fraction((t + 1) ** 2, 4)


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=8, max_r=4), st.fractions(min_value=3, max_value=9, max_denominator=7))
def test_handshake_identity(h, t):
    expected = h.r * h.num_edges - h.n * gen_binomial(t, h.r - 1)
    assert excess_degree_sum(h, t) == expected


def test_binomial_telescope():
    assert binomial_telescope(5, 2, 0) == 0
    assert binomial_telescope(4, 2, 2) == 5
    assert binomial_telescope(6, 3, 3) == 19
    with pytest.raises(PreconditionError):
        binomial_telescope(3, 2, 4)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 40), st.integers(1, 10), st.data())
def test_binomial_telescope_identity(N, k, data):
    r = data.draw(st.integers(0, N))
    assert binomial_telescope(N, k, r) == math.comb(N, k) - math.comb(N - r, k)


def test_complete_link_sets_examples():
    two = UniformHypergraph.from_edges(4, 2, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)])
    assert complete_link_sets(two, [3], [1, 2, 4], 1) == ((1,), (2,))
    assert complete_link_sets(BOWTIE7, [], range(1, 8), 3) == ((1, 2, 3), (4, 5, 6), (5, 6, 7))
    k5 = UniformHypergraph.complete(5, 3)
    assert complete_link_sets(k5, [1], [2, 3, 4, 5], 3) == tuple(combinations([2, 3, 4, 5], 3))
    with pytest.warns(UserWarning):
        assert complete_link_sets(k5, [1], [2, 3, 4, 5], 1) == ()


def test_clique_extensions_examples():
    assert clique_extensions(BOWTIE7, [], range(1, 8), 3) == ((1, 2, 3), (4, 5, 6), (5, 6, 7))
    k5 = UniformHypergraph.complete(5, 2)
    assert set(clique_extensions(k5, [5], [1, 2, 3, 4], 3)) == set(combinations(range(1, 5), 2))
    assert clique_extensions(BOWTIE7, [7], [4, 5, 6], 3) == ((5, 6),)
    with pytest.raises(PreconditionError):
        clique_extensions(k5, [1, 2, 3, 4], [5], 3)


def via_link_sets(h, x, ground, k):
    """Right-hand side: X is a clique and T is link-complete for every admissible Y ⊆ X."""
    ell = h.r
    size = k - len(x)
    if len(x) >= ell and not all(h.has_edge(e) for e in combinations(x, ell)):
        return set()
    out = set(combinations(ground, size))
    for y in subsets(x):
        if ell + len(x) - k <= len(y) < ell:
            out &= set(complete_link_sets(h, y, ground, size))
    return out


def check_claim8(h, k):
    verts = h.vertices
    for x in subsets(verts):
        if len(x) > k:
            continue
        rest = [v for v in verts if v not in x]
        for ground in subsets(rest):
            if len(ground) < k - len(x):
                continue
            assert set(clique_extensions(h, x, ground, k)) == via_link_sets(h, x, ground, k)


@pytest.mark.parametrize("k", [3, 4])
def test_claim8_exhaustive_small(k):
    for h in all_graphs(4):
        check_claim8(h, k)


@settings(max_examples=40, deadline=None)
@given(hypergraphs(min_n=5, max_n=7, r=2), st.integers(3, 4))
def test_claim8_random(h, k):
    check_claim8(h, k)


def test_degree_partition():
    assert degree_partition(disjoint_union(K3, K3), 2) == (tuple(range(1, 7)), ())
    v1, v2 = degree_partition(BOWTIE7, 2)
    assert v2 == (5, 6) and len(v1) == 5
    assert degree_partition(K4, 2) == ((), (1, 2, 3, 4))
    assert degree_partition(construct_counterexample(4), Fraction(16, 5), k=3) == (tuple(range(1, 7)), ())


def test_min_degree():
    for t in range(2, 7):
        for k in range(3, t + 2):
            for ell in range(2, k):
                assert min_degree(t, k, ell) == math.comb(t, ell - 1)
    assert min_degree(Fraction(16, 5), 3, 2) == 4


@settings(max_examples=150, deadline=None)
@given(hypergraphs(min_n=3, max_n=8, r=2), st.integers(2, 4))
def test_condition_forces_degree(h, t):
    params = Parameters(h.n, t, 3, 2)
    ok, _ = check_condition(h, params)
    if ok:
        assert min(h.degrees()) >= math.comb(t, 1)
