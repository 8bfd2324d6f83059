"""Command-line surface: generate family members, evaluate formulas,
apply interpretations, run the width oracles, and run verification
suites.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 a size cap or
search budget was hit (the answer is unknown, not wrong).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import bichain_family as bf
from . import power_family as pf
from . import word_family as wf
from .graphs import (GraphError, LabeledGraph, SubdivisionPlan,
                     antichain_member_In, grid, make_Tn, tri_corner_grid,
                     uniform_subdivide_utg, upper_tri_grid)
from .interpret import (Interpretation, InterpretationError, Pipeline, apply,
                        builtin_complement, builtin_induced, compose_pipeline,
                        parse_interpretation)
from .logic import (EvalError, FormulaSyntaxError, SetQuantifierCapError,
                    is_set_var, materialize, parse_formula, parse_library,
                    PredicateLibrary, evaluate)
from .search import BudgetExhausted
from .verify import SUITES, run_suite
from .widths import (KExpression, SizeCapExceeded, TreeDecomposition,
                     WidthError, cliquewidth_exact, treewidth_exact,
                     verify_k_expression, verify_tree_decomposition)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def _gen_graph(args) -> LabeledGraph:
    fam = args.family
    need = {
        "grid": ("m", "n"), "utg": ("t",), "word": ("alpha", "n"),
        "bichain": ("n",), "split": ("n",), "bpg": ("n",), "power": ("n",),
        "Tn": ("n",), "subdiv": ("r",), "In": ("n",), "tri-grid": ("n",),
    }[fam]
    for a in need:
        if getattr(args, a, None) is None:
            raise UsageError(f"family {fam!r} needs --{a}")
    if fam == "grid":
        return grid(args.m, args.n)
    if fam == "utg":
        return upper_tri_grid(args.t)
    if fam == "word":
        return wf.build_Hn(args.alpha, args.n) if args.labels \
            else wf.build_Gn(args.alpha, args.n)
    if fam == "bichain":
        return bf.build_Zn(args.n, with_labels=args.labels)
    if fam == "split":
        Z = bf.build_Zn(args.n, with_labels=args.labels)
        A, _ = bf.zn_parts(args.n)
        return bf.split_from_bichain(Z, A)
    if fam == "bpg":
        return bf.build_Pn(args.n)
    if fam == "power":
        return pf.build_Dn(args.n)
    if fam == "Tn":
        return make_Tn(args.n)
    if fam == "subdiv":
        sizes = {}
        if args.path_sizes:
            for part in args.path_sizes.split(","):
                j, k = part.split(":")
                sizes[int(j)] = int(k)
        G, originals = uniform_subdivide_utg(SubdivisionPlan(args.r, sizes))
        return G.with_labels({"original": originals})
    if fam == "In":
        return antichain_member_In(args.n)
    if fam == "tri-grid":
        return tri_corner_grid(args.n)
    raise UsageError(f"unknown family {fam!r}")


def _emit_graph(G: LabeledGraph, out: str, dot: str | None) -> None:
    if out == "-":
        print(G.to_json())
    else:
        Path(out).write_text(G.to_json())
    if dot:
        Path(dot).write_text(G.to_dot())


def cmd_gen(args) -> int:
    G = _gen_graph(args)
    _emit_graph(G, args.output, args.dot)
    if args.output != "-":
        print(f"{args.family}: {G.n} vertices, {len(G.edges)} edges "
              f"-> {args.output}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

_ASSIGN_RE = re.compile(r"\s*(\w+)\s*=\s*(\{[^}]*\}|\d+)\s*$")


def parse_assignment(text: str) -> dict:
    """Parse ``x=3, Y={1,2}`` into a valuation dict."""
    out: dict = {}
    if not text.strip():
        return out
    # split on commas not inside braces
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    for part in parts:
        m = _ASSIGN_RE.match(part)
        if not m:
            raise UsageError(f"bad assignment {part.strip()!r}; "
                             f"expected name=3 or Name={{1,2}}")
        name, val = m.groups()
        if val.startswith("{"):
            inner = val[1:-1].strip()
            out[name] = frozenset(int(x) for x in inner.split(",") if x.strip())
            if not is_set_var(name):
                raise UsageError(f"{name!r} gets a set but is lowercase; "
                                 f"set variables start uppercase")
        else:
            out[name] = int(val)
            if is_set_var(name):
                raise UsageError(f"{name!r} is a set variable but gets a vertex")
    return out


def _load_graph(path: str) -> LabeledGraph:
    return LabeledGraph.from_json(Path(path).read_text())


def cmd_eval(args) -> int:
    G = _load_graph(args.graph)
    lib = PredicateLibrary()
    if args.library:
        lib = parse_library(Path(args.library).read_text())
    if (args.formula is None) == (args.pred is None):
        raise UsageError("give exactly one of --formula or --pred")
    if args.pred is not None:
        if args.assign:
            val = parse_assignment(args.assign)
            d = lib.by_name.get(args.pred)
            if d is None:
                raise UsageError(f"no predicate {args.pred!r} in the library")
            body = parse_formula(
                f"{args.pred}({', '.join(d.params)})")
            res = evaluate(G, lib, body, val, set_cap=args.set_cap)
            print("true" if res else "false")
        else:
            table = materialize(G, lib, args.pred, set_cap=args.set_cap)
            for row in sorted(table):
                print(" ".join(G.name_of(v) for v in row))
            print(f"# {args.pred}: {len(table)} tuples", file=sys.stderr)
        return EXIT_OK
    f = parse_formula(args.formula)
    val = parse_assignment(args.assign or "")
    res = evaluate(G, lib, f, val, set_cap=args.set_cap)
    print("true" if res else "false")
    return EXIT_OK


# ---------------------------------------------------------------------------
# apply
# ---------------------------------------------------------------------------

_BUILTIN_INTERPS = {
    "delta": wf.delta_interp,
    "gamma-contract": wf.gamma_contract_interp,
    "psi-bichain": bf.psi_bichain,
    "psi-split": bf.psi_split,
    "phi-power": pf.phi_power,
    "complement": builtin_complement,
    "induced": builtin_induced,
}


def _resolve_interp(spec: str) -> Interpretation:
    if spec in _BUILTIN_INTERPS:
        return _BUILTIN_INTERPS[spec]()
    return parse_interpretation(Path(spec).read_text())


def cmd_apply(args) -> int:
    G = _load_graph(args.graph)
    names = args.pipeline.split(",") if args.pipeline else [args.interp]
    if names == [None]:
        raise UsageError("give --interp or --pipeline")
    interps = [_resolve_interp(nm) for nm in names]
    params = None
    if args.params:
        bind = parse_assignment(args.params)
        missing = [p for p in interps[0].params if p not in bind]
        if missing:
            raise UsageError(f"--params is missing {missing}")
        params = [bind[p] for p in interps[0].params]
    if interps[0].name == "phi-power":
        pf.check_power_input(G.n)
    stages = [(I, params if i == 0 else None)
              for i, I in enumerate(interps)]
    H = compose_pipeline(Pipeline(stages), G, set_cap=args.set_cap)
    _emit_graph(H, args.output, args.dot)
    if args.output != "-":
        print(f"applied {'+'.join(names)}: {H.n} vertices, "
              f"{len(H.edges)} edges -> {args.output}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# width
# ---------------------------------------------------------------------------

def cmd_width(args) -> int:
    G = _load_graph(args.graph)
    if args.certify:
        text = Path(args.certify).read_text()
        if args.measure == "twd":
            td = TreeDecomposition.from_json(text)
            ok = verify_tree_decomposition(G, td)
            print(json.dumps({"measure": "twd", "certificate": "valid" if ok
                              else "invalid", "width": td.width}))
        else:
            e = KExpression.from_json(text)
            ok = verify_k_expression(G, e)
            print(json.dumps({"measure": "cwd", "certificate": "valid" if ok
                              else "invalid", "k": e.k}))
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.measure == "twd":
        w, td = treewidth_exact(G, cap=args.cap or 12)
        cert = td.to_json()
    else:
        w, e = cliquewidth_exact(G, cap=args.cap or 8,
                                 budget=args.budget or 2_000_000)
        cert = e.to_json()
    if args.cert_out:
        Path(args.cert_out).write_text(cert)
    print(json.dumps({"measure": args.measure, "value": w}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    knobs = {}
    if args.seed is not None:
        knobs["seed"] = args.seed
    if args.max_n is not None:
        knobs["max_n"] = args.max_n
    if args.trials is not None:
        knobs["trials"] = args.trials
    import inspect
    fn = SUITES[args.suite]
    accepted = set(inspect.signature(fn).parameters)
    dropped = {k for k in knobs if k not in accepted}
    for k in dropped:
        print(f"note: suite {args.suite!r} ignores --{k.replace('_', '-')}",
              file=sys.stderr)
        knobs.pop(k)
    rep = run_suite(args.suite, **knobs)
    text = rep.to_json()
    if args.json:
        Path(args.json).write_text(text)
    else:
        print(text)
    n_fail = sum(not r.passed for r in rep.records)
    print(f"suite {args.suite}: {len(rep.records)} checks, "
          f"{n_fail} failures", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="msograph", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a family member")
    g.add_argument("--family", required=True,
                   choices=["grid", "utg", "word", "bichain", "split", "bpg",
                            "power", "Tn", "subdiv", "In", "tri-grid"])
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--alpha", help="letter word over 0/1/2 (word family)")
    g.add_argument("--labels", action="store_true",
                   help="include the marker labels the interpretations use")
    g.add_argument("--path-sizes",
                   help="subdiv family: per-column path sizes as j:k,j:k")
    g.add_argument("-o", "--output", default="-")
    g.add_argument("--dot")
    g.set_defaults(fn=cmd_gen)

    e = sub.add_parser("eval", help="evaluate a formula or dump a predicate")
    e.add_argument("graph")
    e.add_argument("--library", help="predicate definitions file")
    e.add_argument("--formula")
    e.add_argument("--pred", help="library predicate name")
    e.add_argument("--assign", help="valuation, e.g. 'x=3, Y={1,2}'")
    e.add_argument("--set-cap", type=int, default=22)
    e.set_defaults(fn=cmd_eval)

    a = sub.add_parser("apply", help="apply an interpretation")
    a.add_argument("graph")
    a.add_argument("--interp",
                   help=f"file or builtin: {', '.join(_BUILTIN_INTERPS)}")
    a.add_argument("--pipeline", help="comma-separated interp names/files")
    a.add_argument("--params", help="set parameter values, e.g. 'O={0,1,2}'")
    a.add_argument("--set-cap", type=int, default=22)
    a.add_argument("-o", "--output", default="-")
    a.add_argument("--dot")
    a.set_defaults(fn=cmd_apply)

    w = sub.add_parser("width", help="exact width oracles and certificates")
    w.add_argument("graph")
    w.add_argument("--measure", required=True, choices=["twd", "cwd"])
    w.add_argument("--exact", action="store_true", default=True)
    w.add_argument("--certify", help="verify this certificate file instead")
    w.add_argument("--cert-out", help="write the witness certificate here")
    w.add_argument("--cap", type=int)
    w.add_argument("--budget", type=int)
    w.set_defaults(fn=cmd_width)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True, choices=sorted(SUITES))
    v.add_argument("--seed", type=int)
    v.add_argument("--max-n", type=int, dest="max_n")
    v.add_argument("--trials", type=int)
    v.add_argument("--json", help="write the report here instead of stdout")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (BudgetExhausted, SizeCapExceeded, SetQuantifierCapError,
            InterpretationError) as exc:
        if isinstance(exc, InterpretationError) and "cap" not in str(exc):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CHECK_FAILED
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, FormulaSyntaxError, GraphError, WidthError, EvalError,
            wf.WordError, bf.BichainError, pf.PowerError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
