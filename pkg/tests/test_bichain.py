import pytest

from msograph.bichain_family import (BichainError, bichain_ground_truth,
                                     bichain_predicates, build_Pn, build_Zn,
                                     psi_bichain, psi_split,
                                     split_from_bichain, zn_parts)
from msograph.graphs import grid
from msograph.interpret import apply
from msograph.logic import materialize_all
from msograph.search import is_isomorphic
from msograph.word_family import palpha_segment


def test_Z3_edge_count():
    assert len(build_Zn(3).edges) == 9


def test_long_range_rule_first_fires_at_n5():
    # columns j even, j' odd with j' >= j+3 need n >= 5
    def long_range_edges(n):
        Z = build_Zn(n, with_labels=False)
        cnt = 0
        for (u, v) in Z.edges:
            j, j2 = u // n + 1, v // n + 1
            if abs(j - j2) > 1:
                cnt += 1
        return cnt
    assert long_range_edges(4) == 0
    assert long_range_edges(5) > 0


def test_labels_partition_roles():
    Z = build_Zn(4)
    assert len(Z.labels["top"]) == 4
    assert len(Z.labels["even"]) == 8
    assert Z.labels["first"] & Z.labels["last"] == frozenset()


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_tables_match_ground_truth(n):
    Z = build_Zn(n)
    tables = materialize_all(Z, bichain_predicates(), set_cap=22)
    for name, expected in bichain_ground_truth(n).items():
        assert tables[name] == expected, name


@pytest.mark.parametrize("n", [1, 2, 3])
def test_interpretation_yields_grid(n):
    H = apply(psi_bichain(), build_Zn(n + 2))
    assert is_isomorphic(H, grid(n, n)) is not None


def test_split_round_trip():
    for n in range(1, 6):
        Z = build_Zn(n)
        A, _ = zn_parts(n)
        back = apply(psi_split(), split_from_bichain(Z, A))
        assert back.n == Z.n and back.edges == Z.edges


def test_split_validates_partition():
    Z = build_Zn(3)
    with pytest.raises(BichainError):
        split_from_bichain(Z, [0])  # edges inside the complement part
    with pytest.raises(BichainError):
        A, _ = zn_parts(3)
        split_from_bichain(Z, A, part_I=[0])  # not a partition


def test_Pn_is_the_all2_word_graph():
    for n in range(1, 5):
        assert is_isomorphic(build_Pn(n),
                             palpha_segment("2" * n, n, n)) is not None
