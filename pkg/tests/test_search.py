import itertools
import random

import pytest

from msograph.graphs import LabeledGraph, grid, upper_tri_grid
from msograph.search import (BudgetExhausted, is_antichain,
                             is_induced_subgraph_of, is_isomorphic)


def _random_graph(rng, n):
    return LabeledGraph.build(
        n, [e for e in itertools.combinations(range(n), 2)
            if rng.random() < 0.5])


def test_induced_embedding_is_checked():
    P3 = LabeledGraph.build(3, [(0, 1), (1, 2)])
    K3 = LabeledGraph.build(3, [(0, 1), (1, 2), (0, 2)])
    # P3 is a subgraph of K3 but not an induced one
    assert is_induced_subgraph_of(P3, K3) is None
    assert is_induced_subgraph_of(P3, grid(2, 2)) is not None


def test_embedding_witness_is_an_embedding():
    H = grid(2, 2)
    G = grid(3, 3)
    m = is_induced_subgraph_of(H, G)
    assert m is not None
    for u, v in itertools.combinations(range(H.n), 2):
        assert H.has_edge(u, v) == G.has_edge(m[u], m[v])


def test_isomorphic_relabeled_graphs():
    rng = random.Random(5)
    for _ in range(20):
        G = _random_graph(rng, 7)
        perm = list(range(7))
        rng.shuffle(perm)
        H = LabeledGraph.build(7, [(perm[u], perm[v]) for (u, v) in G.edges])
        assert is_isomorphic(G, H) is not None


def test_non_isomorphic_same_degrees():
    C6 = LabeledGraph.build(6, [(i, (i + 1) % 6) for i in range(6)])
    two_triangles = LabeledGraph.build(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert is_isomorphic(C6, two_triangles) is None


def test_respect_labels():
    G = LabeledGraph.build(2, [(0, 1)], labels={"m": [0]})
    H = LabeledGraph.build(2, [(0, 1)], labels={"m": [1]})
    assert is_isomorphic(G, H, respect_labels=False) is not None
    iso = is_isomorphic(G, H, respect_labels=True)
    assert iso is None or iso[0] == 1


def test_antichain_detects_comparable_pair():
    ok, witness = is_antichain([grid(2, 2), grid(3, 3)])
    assert not ok and witness == (0, 1)


def test_budget_raises():
    C7 = LabeledGraph.build(7, [(i, (i + 1) % 7) for i in range(7)])
    with pytest.raises(BudgetExhausted):
        # an odd cycle never embeds in a bipartite grid; the search has
        # to do real work to find that out
        is_induced_subgraph_of(C7, grid(4, 4), budget=10)
