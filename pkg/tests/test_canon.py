import random
from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from kkshadow.hypergraph import UniformHypergraph
from kkshadow.search.canon import canonical_form, canonical_key
from strategies import all_graphs, hypergraphs


def brute_key(h):
    best = None
    for perm in permutations(range(1, h.n + 1)):
        cert = tuple(sorted(tuple(sorted(perm[v - 1] for v in e)) for e in h.edges))
        if best is None or cert < best:
            best = cert
    return best


def permuted(h, rng):
    perm = list(range(1, h.n + 1))
    rng.shuffle(perm)
    return h.relabel({v: perm[v - 1] for v in h.vertices})


def test_isomorphism_class_counts():
    # numbers of graphs on 4, 5 and 6 unlabeled vertices
    assert len({canonical_key(h) for h in all_graphs(4)}) == 11
    assert len({canonical_key(h) for h in all_graphs(5)}) == 34
    assert len({canonical_key(h) for h in all_graphs(5, 3)}) == 34


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=8, max_r=3), st.randoms(use_true_random=False))
def test_key_invariant_under_relabeling(h, rng):
    assert canonical_key(permuted(h, rng)) == canonical_key(h)
    cf = canonical_form(h)
    assert cf.num_edges == h.num_edges and canonical_key(cf) == canonical_key(h)


@settings(max_examples=150, deadline=None)
@given(hypergraphs(min_n=5, max_n=6, r=2), hypergraphs(min_n=5, max_n=6, r=2))
def test_key_agrees_with_brute_force(a, b):
    if a.n != b.n:
        return
    assert (canonical_key(a) == canonical_key(b)) == (brute_key(a) == brute_key(b))


def test_regular_graphs_separated():
    # C6 and two triangles are both 2-regular on six vertices
    c6 = UniformHypergraph.from_edges(6, 2, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)])
    tt = UniformHypergraph.from_edges(6, 2, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
    assert canonical_key(c6) != canonical_key(tt)
    rng = random.Random(3)
    for _ in range(20):
        assert canonical_key(permuted(c6, rng)) == canonical_key(c6)
