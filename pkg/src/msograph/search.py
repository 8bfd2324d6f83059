"""Backtracking search for induced-subgraph containment and isomorphism.

The searches use bitset adjacency and a deterministic vertex order
(descending degree, then index) so failing runs are reproducible.  An
optional node-expansion budget turns long searches into an explicit
``BudgetExhausted`` outcome, never a negative answer.
"""

from __future__ import annotations

from typing import Optional

from .graphs import LabeledGraph


class BudgetExhausted(Exception):
    """Search exceeded its node-expansion budget before deciding."""

    def __init__(self, expanded: int):
        super().__init__(f"search budget exhausted after {expanded} expansions")
        self.expanded = expanded


def _pattern_order(H: LabeledGraph) -> list[int]:
    """Descending degree, ties by index, but preferring connectivity to
    already-placed vertices so pruning bites early."""
    deg = H.degree_sequence()
    adj = H.adjacency()
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(range(H.n))
    while remaining:
        # candidates adjacent to the placed prefix, if any
        frontier = {v for v in remaining if adj[v] & placed} or remaining
        v = max(frontier, key=lambda v: (deg[v], -v))
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    return order


def is_induced_subgraph_of(H: LabeledGraph, G: LabeledGraph,
                           budget: Optional[int] = None) -> Optional[dict[int, int]]:
    """An injective map V(H) -> V(G) preserving edges and non-edges, or None.

    Labels are ignored (plain-graph containment).  Raises
    ``BudgetExhausted`` if ``budget`` node expansions are exceeded.
    """
    if H.n > G.n:
        return None
    if H.n == 0:
        return {}
    hadj = H.adjacency_masks()
    gadj = G.adjacency_masks()
    hdeg = H.degree_sequence()
    gdeg = G.degree_sequence()
    order = _pattern_order(H)
    gall = (1 << G.n) - 1
    # initial candidate domains: degree monotonicity
    init_dom = []
    for v in order:
        dom = 0
        for w in range(G.n):
            if gdeg[w] >= hdeg[v]:
                dom |= 1 << w
        init_dom.append(dom)

    expanded = 0
    mapping: dict[int, int] = {}

    def backtrack(pos: int, used: int, doms: list[int]) -> bool:
        nonlocal expanded
        if pos == len(order):
            return True
        v = order[pos]
        cand = doms[pos] & ~used
        while cand:
            w_bit = cand & -cand
            cand ^= w_bit
            w = w_bit.bit_length() - 1
            expanded += 1
            if budget is not None and expanded > budget:
                raise BudgetExhausted(expanded)
            # check edges/non-edges against already placed vertices
            ok = True
            for u in order[:pos]:
                gu = mapping[u]
                if ((hadj[v] >> u) & 1) != ((gadj[w] >> gu) & 1):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            # forward restriction: future pattern neighbours of v must map
            # into N(w); future non-neighbours must avoid N(w)
            new_doms = list(doms)
            feasible = True
            for later_pos in range(pos + 1, len(order)):
                u = order[later_pos]
                if (hadj[v] >> u) & 1:
                    new_doms[later_pos] &= gadj[w]
                else:
                    new_doms[later_pos] &= gall & ~gadj[w] & ~w_bit
                if new_doms[later_pos] & ~used == 0:
                    feasible = False
                    break
            if feasible and backtrack(pos + 1, used | w_bit, new_doms):
                return True
            del mapping[v]
        return False

    if backtrack(0, 0, init_dom):
        return {v: mapping[v] for v in range(H.n)}
    return None


def is_isomorphic(G: LabeledGraph, H: LabeledGraph,
                  respect_labels: bool = False,
                  budget: Optional[int] = None) -> Optional[dict[int, int]]:
    """An edge-preserving bijection V(G) -> V(H), or None.

    With ``respect_labels`` the bijection must map every label set of G
    onto the equally named label set of H.
    """
    if G.n != H.n or len(G.edges) != len(H.edges):
        return None
    if sorted(G.degree_sequence()) != sorted(H.degree_sequence()):
        return None
    if respect_labels:
        if set(G.labels) != set(H.labels):
            return None
        for k in G.labels:
            if len(G.labels[k]) != len(H.labels[k]):
                return None
    emb = is_induced_subgraph_of(G, H, budget=budget)
    if emb is None:
        return None
    if respect_labels:
        # retry with label-compatible domains via a filtered search
        emb = _label_isomorphism(G, H, budget)
    return emb


def _label_isomorphism(G: LabeledGraph, H: LabeledGraph,
                       budget: Optional[int]) -> Optional[dict[int, int]]:
    sig_g = [frozenset(k for k, vs in G.labels.items() if v in vs) for v in range(G.n)]
    sig_h = [frozenset(k for k, vs in H.labels.items() if v in vs) for v in range(H.n)]
    gadj = G.adjacency_masks()
    hadj = H.adjacency_masks()
    order = _pattern_order(G)
    expanded = 0
    mapping: dict[int, int] = {}

    def backtrack(pos: int, used: int) -> bool:
        nonlocal expanded
        if pos == len(order):
            return True
        v = order[pos]
        for w in range(H.n):
            if (used >> w) & 1 or sig_g[v] != sig_h[w]:
                continue
            expanded += 1
            if budget is not None and expanded > budget:
                raise BudgetExhausted(expanded)
            if any(((gadj[v] >> u) & 1) != ((hadj[w] >> mapping[u]) & 1)
                   for u in order[:pos]):
                continue
            mapping[v] = w
            if backtrack(pos + 1, used | (1 << w)):
                return True
            del mapping[v]
        return False

    if backtrack(0, 0):
        return {v: mapping[v] for v in range(G.n)}
    return None


def is_antichain(graphs: list[LabeledGraph],
                 budget: Optional[int] = None
                 ) -> tuple[bool, Optional[tuple[int, int]]]:
    """True iff no listed graph embeds induced into another.

    On failure returns the violating (pattern_index, host_index) pair.
    """
    for i, Gi in enumerate(graphs):
        for j, Gj in enumerate(graphs):
            if i == j:
                continue
            if is_induced_subgraph_of(Gi, Gj, budget=budget) is not None:
                return False, (i, j)
    return True, None
