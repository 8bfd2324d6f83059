import itertools
import random

import pytest

from msograph.graphs import LabeledGraph, grid, subdivide, upper_tri_grid
from msograph.search import BudgetExhausted
from msograph.widths import (KExpression, SizeCapExceeded, TreeDecomposition,
                             WidthError, cliquewidth_exact,
                             decomposition_violation,
                             extend_decomposition_for_subdivision,
                             treewidth_exact, verify_k_expression,
                             verify_tree_decomposition)

K4 = LabeledGraph.build(4, [e for e in itertools.combinations(range(4), 2)])
TREE = LabeledGraph.build(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
PATH4 = LabeledGraph.build(4, [(0, 1), (1, 2), (2, 3)])


def test_single_bag_decomposition_is_valid():
    td = TreeDecomposition.build([range(4)], [])
    assert verify_tree_decomposition(K4, td)
    assert td.width == 3


def test_path_decomposition_of_a_path():
    td = TreeDecomposition.build([{0, 1}, {1, 2}, {2, 3}], [(0, 1), (1, 2)])
    assert verify_tree_decomposition(PATH4, td)
    assert td.width == 1


def test_violations_are_reported():
    td = TreeDecomposition.build([{0, 1}, {2, 3}], [(0, 1)])
    msg = decomposition_violation(PATH4, td)
    assert msg is not None and "(1,2)" in msg
    # disconnected occurrence of a vertex
    td2 = TreeDecomposition.build([{0, 1}, {2}, {1, 2, 3}],
                                  [(0, 1), (1, 2)])
    assert "disconnected" in (decomposition_violation(PATH4, td2) or "")


def test_treewidth_known_values():
    assert treewidth_exact(TREE)[0] == 1
    assert treewidth_exact(K4)[0] == 3
    assert treewidth_exact(grid(3, 3))[0] == 3
    assert treewidth_exact(grid(2, 4))[0] == 2


def test_treewidth_witness_matches():
    for G in (TREE, K4, grid(3, 3), upper_tri_grid(4)):
        w, td = treewidth_exact(G)
        assert verify_tree_decomposition(G, td)
        assert td.width == w


def test_treewidth_cap():
    with pytest.raises(SizeCapExceeded):
        treewidth_exact(grid(4, 4))


def test_subdivision_extension():
    w, td = treewidth_exact(K4)
    for t in (1, 2, 3):
        td2 = extend_decomposition_for_subdivision(K4, td, t)
        assert verify_tree_decomposition(subdivide(K4, t), td2)
        assert td2.width <= max(w, 3)
    w, td = treewidth_exact(TREE)
    td3 = extend_decomposition_for_subdivision(TREE, td, 3)
    assert td3.width <= 3


def test_subdivision_extension_rejects_bad_input():
    bad = TreeDecomposition.build([{0, 1}], [])
    with pytest.raises(WidthError):
        extend_decomposition_for_subdivision(K4, bad, 2)


def test_kexpression_hand_built():
    # standard 2-label construction of K_3
    e = KExpression(2, ("relabel", 2, 1,
                        ("join", 1, 2,
                         ("union",
                          ("relabel", 2, 1,
                           ("join", 1, 2,
                            ("union", ("leaf", 1), ("leaf", 2)))),
                          ("leaf", 2)))))
    K3 = LabeledGraph.build(3, [(0, 1), (0, 2), (1, 2)])
    assert verify_k_expression(K3, e)
    assert not verify_k_expression(PATH4, e)


def test_kexpression_malformed():
    with pytest.raises(WidthError):
        KExpression(2, ("join", 1, 1, ("leaf", 1))).evaluate()
    with pytest.raises(WidthError):
        KExpression(2, ("leaf", 3)).evaluate()


def test_cliquewidth_known_values():
    vals = {
        "K1": (LabeledGraph.build(1, []), 1),
        "K3": (LabeledGraph.build(3, [(0, 1), (0, 2), (1, 2)]), 2),
        "C5": (LabeledGraph.build(5, [(0, 1), (1, 2), (2, 3), (3, 4),
                                      (0, 4)]), 3),
        "C4": (grid(2, 2), 2),
        "P4": (PATH4, 3),
        "K6": (LabeledGraph.build(
            6, [e for e in itertools.combinations(range(6), 2)]), 2),
    }
    for name, (G, want) in vals.items():
        got, e = cliquewidth_exact(G)
        assert got == want, name
        assert verify_k_expression(G, e), name


def test_cliquewidth_cap_and_budget():
    with pytest.raises(SizeCapExceeded):
        cliquewidth_exact(grid(3, 3))  # 9 vertices over the default cap
    with pytest.raises(BudgetExhausted):
        cliquewidth_exact(grid(2, 4), budget=50)


def test_monotone_under_induced_subgraphs():
    from msograph.graphs import induced_subgraph
    rng = random.Random(23)
    for _ in range(10):
        n = rng.randrange(3, 7)
        G = LabeledGraph.build(
            n, [e for e in itertools.combinations(range(n), 2)
                if rng.random() < 0.5])
        S = [v for v in range(n) if rng.random() < 0.7]
        if not S:
            continue
        H = induced_subgraph(G, S)
        assert treewidth_exact(H)[0] <= treewidth_exact(G)[0]
        assert cliquewidth_exact(H)[0] <= cliquewidth_exact(G)[0] \
            if H.n else True


def test_certificates_round_trip_json():
    w, td = treewidth_exact(K4)
    assert TreeDecomposition.from_json(td.to_json()) == td
    cw, e = cliquewidth_exact(PATH4)
    assert KExpression.from_json(e.to_json()) == e
