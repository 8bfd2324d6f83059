"""The universal bichain graph, its grid interpretation, and the split
round trip.

Z_n is a bipartite graph on an n x n array of points whose three edge
rules make every bichain graph on <= n vertices an induced subgraph.
With five marker labels, a parameter-free formula pair turns Z_{n+2}
into exactly the n x n grid.  Completing the odd columns into a clique
gives a split graph; deleting the marked clique edges again recovers
Z_n exactly.
"""

from msograph import (apply, build_Zn, grid, is_isomorphic, psi_bichain,
                      psi_split, split_from_bichain, zn_parts)

for n in range(1, 5):
    H = apply(psi_bichain(), build_Zn(n + 2))
    assert is_isomorphic(H, grid(n, n)) is not None
    print(f"psi(Z_{n + 2}) is the {n}x{n} grid "
          f"({H.n} vertices, {len(H.edges)} edges)")

n = 5
Z = build_Zn(n)
A, I = zn_parts(n)
S = split_from_bichain(Z, A)
print(f"\nZ_{n}: {len(Z.edges)} edges; split completion adds "
      f"{len(S.edges) - len(Z.edges)} clique edges on |A| = {len(A)}")
back = apply(psi_split(), S)
assert back.edges == Z.edges
print("deleting the marked clique edges restores Z exactly")
