"""Finite labeled graphs, MSO evaluation, interpretations, and width oracles."""

from .graphs import (
    LabeledGraph,
    SubdivisionPlan,
    antichain_member_In,
    branch_vertices,
    contract_subdivision,
    grid,
    induced_subgraph,
    make_Tn,
    mn,
    subdivide,
    tri_corner_grid,
    uniform_subdivide_utg,
    upper_tri_grid,
)
from .search import is_antichain, is_induced_subgraph_of, is_isomorphic
from .logic import (
    PredicateLibrary,
    evaluate,
    materialize,
    materialize_all,
    parse_formula,
    parse_library,
    relativize,
    tc_naive_encoding,
)
from .interpret import (
    Interpretation,
    Pipeline,
    apply,
    apply_all_params,
    builtin_complement,
    builtin_induced,
    compose_pipeline,
    parse_interpretation,
)
from .word_family import (
    build_Gn,
    build_Hn,
    delta_interp,
    gamma_contract_interp,
    grid_parameter_O,
    palpha_segment,
    plan_Gn,
    word_ground_truth,
    word_predicates,
)
from .bichain_family import (
    bichain_ground_truth,
    bichain_predicates,
    build_Pn,
    build_Zn,
    psi_bichain,
    psi_split,
    split_from_bichain,
    zn_parts,
)
from .power_family import (
    build_Dn,
    check_power_input,
    expected_embedding,
    longest_factor_length,
    phi_power,
    power_ground_truth,
    power_predicates,
)
from .widths import (
    KExpression,
    TreeDecomposition,
    cliquewidth_exact,
    extend_decomposition_for_subdivision,
    treewidth_exact,
    verify_k_expression,
    verify_tree_decomposition,
)
from .verify import SUITES, VerificationReport, run_suite

__all__ = [
    "Interpretation",
    "KExpression",
    "LabeledGraph",
    "Pipeline",
    "PredicateLibrary",
    "SUITES",
    "SubdivisionPlan",
    "TreeDecomposition",
    "VerificationReport",
    "antichain_member_In",
    "apply",
    "apply_all_params",
    "bichain_ground_truth",
    "bichain_predicates",
    "branch_vertices",
    "build_Dn",
    "build_Gn",
    "build_Hn",
    "build_Pn",
    "build_Zn",
    "builtin_complement",
    "builtin_induced",
    "check_power_input",
    "cliquewidth_exact",
    "compose_pipeline",
    "contract_subdivision",
    "delta_interp",
    "evaluate",
    "expected_embedding",
    "extend_decomposition_for_subdivision",
    "gamma_contract_interp",
    "grid",
    "grid_parameter_O",
    "induced_subgraph",
    "is_antichain",
    "is_induced_subgraph_of",
    "is_isomorphic",
    "longest_factor_length",
    "make_Tn",
    "materialize",
    "materialize_all",
    "mn",
    "palpha_segment",
    "parse_formula",
    "parse_interpretation",
    "parse_library",
    "phi_power",
    "plan_Gn",
    "power_ground_truth",
    "power_predicates",
    "psi_bichain",
    "psi_split",
    "relativize",
    "run_suite",
    "split_from_bichain",
    "subdivide",
    "tc_naive_encoding",
    "treewidth_exact",
    "tri_corner_grid",
    "uniform_subdivide_utg",
    "upper_tri_grid",
    "verify_k_expression",
    "verify_tree_decomposition",
    "word_ground_truth",
    "word_predicates",
    "zn_parts",
]
