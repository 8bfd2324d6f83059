import math

import pytest

from msograph.graphs import induced_subgraph
from msograph.interpret import apply
from msograph.logic import materialize_all
from msograph.power_family import (PowerError, between_naive, build_Dn,
                                   check_power_input, expected_embedding,
                                   longest_factor_length, phi_power,
                                   power_ground_truth, power_predicates)
from msograph.widths import cliquewidth_exact


def test_D12_shape():
    D = build_Dn(12)
    assert D.n == 12 and len(D.edges) == 30
    # the odd numbers form a clique
    for a in (1, 3, 5, 7, 9, 11):
        for b in (1, 3, 5, 7, 9, 11):
            if a != b:
                assert D.has_edge(a - 1, b - 1)


@pytest.mark.parametrize("n", [10, 12, 14, 16])
def test_tables_match_ground_truth(n):
    tables = materialize_all(build_Dn(n), power_predicates(), set_cap=22)
    gt = power_ground_truth(n)
    for name in ("odd", "pathedge", "clique", "linord", "cliquemin",
                 "one", "succ", "cliqueord", "cliquemin_succ", "forward"):
        assert tables[name] == gt[name], name


def test_between_equals_path_set_form():
    for n in (9, 10, 11):
        D = build_Dn(n)
        tables = materialize_all(D, power_predicates(), set_cap=22)
        assert tables["between"] == between_naive(D, tables["pathedge"])


def test_input_check():
    check_power_input(10)
    with pytest.raises(PowerError):
        check_power_input(11)
    with pytest.raises(PowerError):
        check_power_input(8)


def test_interpreted_patch_is_bipartite_permutation():
    H = apply(phi_power(), build_Dn(12))
    sub = {"2", "4", "10", "12"}
    got = sorted(tuple(sorted((int(H.name_of(u)), int(H.name_of(v)))))
                 for (u, v) in H.edges
                 if H.name_of(u) in sub and H.name_of(v) in sub)
    assert got == [(2, 4), (2, 12), (10, 12)]


def test_expected_embedding_values_and_precondition():
    emb = expected_embedding(2, 12)
    assert emb == {(0, 0): 2, (1, 0): 4, (0, 1): 10, (1, 1): 12}
    with pytest.raises(PowerError):
        expected_embedding(3, 39)  # needs 2^3 * 5 = 40


def test_expected_embedding_edge_exact():
    for k, n in [(2, 12), (2, 20)]:
        emb = expected_embedding(k, n)
        H = apply(phi_power(), build_Dn(n))
        name2v = {H.name_of(v): v for v in range(H.n)}
        for (i, j), a in emb.items():
            for (i2, j2), b in emb.items():
                if (i, j) >= (i2, j2):
                    continue
                want = (i2 == i + 1 and j <= j2) or (i == i2 + 1 and j2 <= j)
                assert want == H.has_edge(name2v[str(a)], name2v[str(b)])


def test_longest_factor_length():
    D = build_Dn(12)
    assert longest_factor_length(D) == 12
    piece = induced_subgraph(D, [0, 1, 2, 5, 6, 10])  # numbers 1,2,3,6,7,11
    assert longest_factor_length(piece) == 3
    with pytest.raises(PowerError):
        from msograph.bichain_family import build_Zn
        longest_factor_length(build_Zn(2))  # names are coordinates


def test_cliquewidth_bound_on_small_factors():
    # induced pieces with at most 7 vertices and longest consecutive run
    # t satisfy the exact clique-width <= 2 (log2 t + 4)
    D = build_Dn(16)
    for S in ([0, 1, 2, 3], [3, 4, 5, 6, 7], [0, 2, 4, 6, 8, 10],
              [1, 3, 7, 8, 9, 15], [0, 1, 2, 3, 4, 5, 6]):
        piece = induced_subgraph(D, S)
        t = longest_factor_length(piece)
        cw, _ = cliquewidth_exact(piece)
        assert cw <= 2 * (math.log2(t) + 4)
