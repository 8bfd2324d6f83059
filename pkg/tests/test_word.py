import pytest

from msograph.graphs import contract_subdivision, grid, upper_tri_grid
from msograph.interpret import apply
from msograph.logic import materialize_all
from msograph.search import is_induced_subgraph_of, is_isomorphic
from msograph.word_family import (WordError, build_Gn, build_Hn,
                                  delta_interp, gamma_contract_interp,
                                  grid_parameter_O, palpha_segment, plan_Gn,
                                  word_ground_truth, word_predicates)


def test_plan_sizes_grow_by_one_per_nonzero_letter():
    plan = plan_Gn("121212", 1)
    assert plan.sizes[0] == 3
    for a, b, letter in zip(plan.sizes, plan.sizes[1:],
                            plan.alpha[plan.p + 1:]):
        assert b == a + (1 if letter != "0" else 0)


def test_plan_rejects_short_words():
    with pytest.raises(WordError):
        plan_Gn("12", 1)
    with pytest.raises(WordError):
        plan_Gn("000", 1)


def test_word_letters_validated():
    with pytest.raises(WordError):
        build_Gn("123", 1)


def test_all2_segment_is_staircase():
    # with the all-2s word, column edges go from row i left to row k right
    # exactly when i <= k
    P = palpha_segment("22", 2, 2)
    names = {P.name_of(v): v for v in range(P.n)}
    assert P.has_edge(names["(0,0)"], names["(0,1)"])
    assert P.has_edge(names["(0,0)"], names["(1,1)"])
    assert P.has_edge(names["(1,0)"], names["(1,1)"])
    assert not P.has_edge(names["(1,0)"], names["(0,1)"])


def test_labels_of_Hn():
    H = build_Hn("121212", 1)
    for lab in ("Colour1", "Colour2", "top", "bottom", "penult",
                "prepenult", "first", "last"):
        assert lab in H.labels


@pytest.mark.parametrize("pattern", ["12", "2", "102", "01"])
def test_tables_match_ground_truth(pattern):
    n = 1
    alpha = pattern * (8 // sum(c != "0" for c in pattern))
    H = build_Hn(alpha, n)
    tables = materialize_all(H, word_predicates(), set_cap=22)
    gt = word_ground_truth(alpha, n)
    for name, expected in gt.items():
        assert tables[name] == expected, name


@pytest.mark.parametrize("pattern", ["12", "2", "102", "01"])
def test_pipeline_contracts_to_upper_tri_grid(pattern):
    n = 1
    alpha = pattern * (8 // sum(c != "0" for c in pattern))
    H = build_Hn(alpha, n)
    D = apply(delta_interp(), H)
    O = grid_parameter_O(D)
    via_formula = apply(gamma_contract_interp(), D, [O])
    via_oracle = contract_subdivision(D, O)
    target = upper_tri_grid(2 * n)
    assert is_isomorphic(via_formula, target) is not None
    assert is_isomorphic(via_oracle, target) is not None
    assert is_induced_subgraph_of(grid(n, n), via_oracle) is not None


def test_two_contraction_routes_agree_at_n2():
    H = build_Hn("12" * 4, 2)
    D = apply(delta_interp(), H)
    O = grid_parameter_O(D)
    via_formula = apply(gamma_contract_interp(), D, [O])
    via_oracle = contract_subdivision(D, O)
    assert via_formula.edges == via_oracle.edges
    assert is_isomorphic(via_oracle, upper_tri_grid(4)) is not None
