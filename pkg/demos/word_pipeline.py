"""Walk the word-family pipeline end to end for one word.

A word over {0, 1, 2} defines a family of column graphs.  With marker
labels added, a formula-defined interpretation carves a subdivided
upper triangular grid out of the graph, and a second interpretation
(or the combinatorial contraction oracle — both are run and compared)
collapses the subdivision paths, leaving the upper triangular grid
U_{2n}, which contains the n x n grid as an induced subgraph.
"""

from msograph import (apply, build_Hn, contract_subdivision, delta_interp,
                      gamma_contract_interp, grid, grid_parameter_O,
                      is_induced_subgraph_of, is_isomorphic, upper_tri_grid)

ALPHA = "121212"
N = 1

H = build_Hn(ALPHA, N)
print(f"word {ALPHA!r}, n={N}: labeled graph with {H.n} vertices, "
      f"{len(H.edges)} edges")

D = apply(delta_interp(), H)
print(f"domain interpretation keeps {D.n} vertices "
      f"({len(D.edges)} edges) - a subdivided triangular grid")

O = grid_parameter_O(D)
print(f"{len(O)} coloured vertices become the contraction parameter O")

via_formula = apply(gamma_contract_interp(), D, [O])
via_oracle = contract_subdivision(D, O)
assert via_formula.edges == via_oracle.edges, "the two contraction routes disagree"

target = upper_tri_grid(2 * N)
assert is_isomorphic(via_oracle, target) is not None
print(f"both contraction routes agree and give U_{2 * N} "
      f"({target.n} vertices)")

emb = is_induced_subgraph_of(grid(N, N), via_oracle)
print(f"the {N}x{N} grid embeds induced; witness: "
      f"{ {u: via_oracle.name_of(v) for u, v in emb.items()} }")
