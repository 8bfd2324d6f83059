"""The evaluator against an independent brute-force reference, plus
parser, library, relativization, and TC-encoding behavior."""

import itertools
import random

import pytest

from msograph.graphs import LabeledGraph, grid, induced_subgraph
from msograph.logic import (And, EdgeAtom, Eq, EvalError, ExistsS, ExistsV,
                            FalseF, ForallS, ForallV, Formula,
                            FormulaSyntaxError, Iff, Implies, Not, Or,
                            SetAtom, SetQuantifierCapError, TC, TrueF, App,
                            evaluate, free_vars, materialize,
                            materialize_all, parse_formula, parse_library,
                            relativize, tc_naive_encoding)


# ---------------------------------------------------------------------------
# Reference evaluator: no bitsets, no compilation, no caching
# ---------------------------------------------------------------------------

def ref_eval(G: LabeledGraph, f: Formula, env: dict) -> bool:
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, EdgeAtom):
        return G.has_edge(env[f.x], env[f.y])
    if isinstance(f, Eq):
        return env[f.x] == env[f.y]
    if isinstance(f, SetAtom):
        return env[f.x] in env[f.set_name]
    if isinstance(f, App):
        (x,) = f.args
        return env[x] in G.labels[f.name]
    if isinstance(f, Not):
        return not ref_eval(G, f.body, env)
    if isinstance(f, And):
        return ref_eval(G, f.left, env) and ref_eval(G, f.right, env)
    if isinstance(f, Or):
        return ref_eval(G, f.left, env) or ref_eval(G, f.right, env)
    if isinstance(f, Implies):
        return (not ref_eval(G, f.left, env)) or ref_eval(G, f.right, env)
    if isinstance(f, Iff):
        return ref_eval(G, f.left, env) == ref_eval(G, f.right, env)
    if isinstance(f, ExistsV):
        return any(ref_eval(G, f.body, {**env, f.var: v})
                   for v in range(G.n))
    if isinstance(f, ForallV):
        return all(ref_eval(G, f.body, {**env, f.var: v})
                   for v in range(G.n))
    if isinstance(f, (ExistsS, ForallS)):
        subsets = (frozenset(c) for r in range(G.n + 1)
                   for c in itertools.combinations(range(G.n), r))
        results = (ref_eval(G, f.body, {**env, f.var: S}) for S in subsets)
        return any(results) if isinstance(f, ExistsS) else all(results)
    if isinstance(f, TC):
        pairs = {(u, v) for u in range(G.n) for v in range(G.n)
                 if ref_eval(G, f.body, {**env, f.u: u, f.v: v})}
        reach = {env[f.a]}
        changed = True
        while changed:
            changed = False
            for (u, v) in pairs:
                if u in reach and v not in reach:
                    reach.add(v)
                    changed = True
        return env[f.b] in reach
    raise TypeError(f)


def _to_env(valuation):
    return {k: (frozenset(v) if isinstance(v, (set, frozenset)) else v)
            for k, v in valuation.items()}


def _random_graph(rng, n, n_labels=1):
    edges = [e for e in itertools.combinations(range(n), 2)
             if rng.random() < 0.5]
    labels = {f"red": frozenset(v for v in range(n) if rng.random() < 0.5)}
    return LabeledGraph.build(n, edges, labels=labels)


def _random_formula(rng, depth, vvars, svars):
    if depth == 0:
        opts = ["true"]
        if vvars:
            opts += ["edge", "eq", "label"] * 2
            if svars:
                opts += ["mem"] * 2
        k = rng.choice(opts)
        if k == "edge":
            return EdgeAtom(rng.choice(vvars), rng.choice(vvars))
        if k == "eq":
            return Eq(rng.choice(vvars), rng.choice(vvars))
        if k == "label":
            return App("red", (rng.choice(vvars),))
        if k == "mem":
            return SetAtom(rng.choice(svars), rng.choice(vvars))
        return TrueF()
    k = rng.choice(["ev", "av", "es", "as", "and", "or", "imp", "iff", "not",
                    "tc", "ev", "av"])
    if k in ("ev", "av"):
        v = f"v{len(vvars)}{len(svars)}{depth}"
        body = _random_formula(rng, depth - 1, vvars + [v], svars)
        return ExistsV(v, body) if k == "ev" else ForallV(v, body)
    if k in ("es", "as"):
        S = f"S{len(vvars)}{len(svars)}{depth}"
        body = _random_formula(rng, depth - 1, vvars, svars + [S])
        return ExistsS(S, body) if k == "es" else ForallS(S, body)
    if k == "not":
        return Not(_random_formula(rng, depth - 1, vvars, svars))
    if k == "tc" and len(vvars) >= 2:
        body = _random_formula(rng, depth - 1, ["a", "b"], svars)
        return TC("a", "b", body, rng.choice(vvars), rng.choice(vvars))
    if k in ("and", "or", "imp", "iff"):
        op = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[k]
        return op(_random_formula(rng, depth - 1, vvars, svars),
                  _random_formula(rng, depth - 1, vvars, svars))
    return _random_formula(rng, depth - 1, vvars, svars)


def test_evaluator_matches_reference():
    rng = random.Random(11)
    for _ in range(120):
        n = rng.randrange(1, 6)
        G = _random_graph(rng, n)
        f = ExistsV("x", ExistsV(
            "y", _random_formula(rng, rng.randrange(0, 3), ["x", "y"], [])))
        assert evaluate(G, None, f) == ref_eval(G, f, {})


def test_evaluator_matches_reference_with_sets():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randrange(1, 5)
        G = _random_graph(rng, n)
        f = ExistsS("S", _random_formula(rng, rng.randrange(0, 3), [], ["S"]))
        assert evaluate(G, None, f) == ref_eval(G, f, {})


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def test_parse_connectives_and_quantifiers():
    f = parse_formula("exists x. (forall y. (E(x,y) -> x = y))")
    assert isinstance(f, ExistsV)
    assert free_vars(f) == frozenset()


def test_parse_xor_desugars():
    G = LabeledGraph.build(2, [], labels={"red": [0]})
    f = parse_formula("red(x) xor red(y)")
    assert evaluate(G, None, f, {"x": 0, "y": 1})
    assert not evaluate(G, None, f, {"x": 0, "y": 0})


def test_parse_exists_unique():
    G = LabeledGraph.build(3, [(0, 1)])
    assert evaluate(G, None, parse_formula(
        "exists! x. (forall y. !E(x, y))"))  # only vertex 2 is isolated
    assert not evaluate(G, None, parse_formula(
        "exists! x. (exists y. E(x, y))"))


def test_parse_tc():
    P = LabeledGraph.build(4, [(0, 1), (1, 2)])
    f = parse_formula("TC[a, b: E(a, b)](x, y)")
    assert evaluate(P, None, f, {"x": 0, "y": 2})
    assert evaluate(P, None, f, {"x": 0, "y": 0})  # reflexive closure
    assert not evaluate(P, None, f, {"x": 0, "y": 3})


def test_parse_errors_have_positions():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("exists x. (E(x)")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("x = = y")


# ---------------------------------------------------------------------------
# Libraries and materialization
# ---------------------------------------------------------------------------

def test_library_definitions_and_tables():
    lib = parse_library("""
        # a comment
        def deg2(x) := exists! y. E(x, y) -> false
        def adj(x, y) := E(x, y)
        def twostep(x, y) := exists z. (adj(x, z) & adj(z, y))
    """)
    P = LabeledGraph.build(3, [(0, 1), (1, 2)])
    t = materialize(P, lib, "twostep")
    assert (0, 2) in t and (2, 0) in t and (0, 1) not in t


def test_library_rejects_self_reference_and_duplicates():
    from msograph.logic import LibraryError
    with pytest.raises(LibraryError):
        parse_library("def a(x) := a(x)")
    with pytest.raises(LibraryError):
        parse_library("def a(x) := true\ndef a(x) := false")


def test_materialize_all_skips_set_parameters():
    lib = parse_library("def inset(x, Y) := Y(x)\ndef self(x) := x = x")
    tables = materialize_all(grid(2, 2), lib)
    assert "self" in tables and "inset" not in tables


def test_set_cap_enforced():
    G = grid(5, 5)
    with pytest.raises(SetQuantifierCapError):
        evaluate(G, None, parse_formula("exists X. true"), set_cap=10)


# ---------------------------------------------------------------------------
# Relativization and the TC encoding
# ---------------------------------------------------------------------------

def test_relativize_matches_induced_subgraph():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randrange(1, 6)
        G = _random_graph(rng, n)
        A = [v for v in range(n) if rng.random() < 0.6]
        f = ExistsV("x", _random_formula(rng, rng.randrange(0, 3), ["x"], []))
        while _mentions_tc(f):
            f = ExistsV("x", _random_formula(rng, rng.randrange(0, 3),
                                             ["x"], []))
        lhs = evaluate(G, None, relativize(f, "X"), {"X": frozenset(A)})
        rhs = evaluate(induced_subgraph(G, A), None, f)
        assert lhs == rhs


def _mentions_tc(f):
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, TC):
            return True
        if isinstance(g, (Not, ExistsV, ForallV, ExistsS, ForallS)):
            stack.append(g.body)
        elif isinstance(g, (And, Or, Implies, Iff)):
            stack += [g.left, g.right]
    return False


def test_relativize_rejects_tc_and_clashes():
    with pytest.raises(ValueError):
        relativize(parse_formula("TC[a,b: E(a,b)](x, y)"), "X")
    with pytest.raises(ValueError):
        relativize(parse_formula("exists x. X(x)"), "X")


def test_tc_naive_encoding_agrees_with_primitive():
    rng = random.Random(19)
    body = parse_formula("E(a, b)")
    prim = parse_formula("TC[a, b: E(a, b)](s, t)")
    naive = tc_naive_encoding("a", "b", body, "s", "t")
    for _ in range(15):
        n = rng.randrange(1, 8)
        G = LabeledGraph.build(
            n, [e for e in itertools.combinations(range(n), 2)
                if rng.random() < 0.4])
        for s in range(n):
            for t in range(n):
                va = {"s": s, "t": t}
                assert evaluate(G, None, prim, va) == \
                    evaluate(G, None, naive, va)
