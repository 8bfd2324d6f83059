import json

import pytest

from msograph.cli import main, parse_assignment
from msograph.graphs import LabeledGraph, grid
from msograph.search import is_isomorphic


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_assignment():
    assert parse_assignment("x=3, Y={1,2}") == {"x": 3, "Y": frozenset({1, 2})}
    assert parse_assignment("Y={}") == {"Y": frozenset()}
    with pytest.raises(Exception):
        parse_assignment("X=3")  # set variable given a vertex
    with pytest.raises(Exception):
        parse_assignment("x={1}")  # vertex variable given a set


def test_gen_power(tmp_path, capsys):
    out = tmp_path / "d12.json"
    code, _, _ = run(capsys, "gen", "--family", "power", "--n", "12",
                     "-o", str(out))
    assert code == 0
    G = LabeledGraph.from_json(out.read_text())
    assert G.n == 12 and len(G.edges) == 30


def test_gen_bichain_labels(tmp_path, capsys):
    out = tmp_path / "z3.json"
    code, _, _ = run(capsys, "gen", "--family", "bichain", "--n", "3",
                     "--labels", "-o", str(out))
    assert code == 0
    G = LabeledGraph.from_json(out.read_text())
    assert len(G.edges) == 9 and len(G.labels) == 5


def test_gen_grid_dot(tmp_path, capsys):
    out = tmp_path / "c4.json"
    dot = tmp_path / "c4.dot"
    code, _, _ = run(capsys, "gen", "--family", "grid", "--m", "2", "--n",
                     "2", "-o", str(out), "--dot", str(dot))
    assert code == 0
    assert "graph G {" in dot.read_text()


def test_gen_missing_param_is_usage_error(capsys):
    code, _, err = run(capsys, "gen", "--family", "grid", "--m", "2")
    assert code == 2 and "needs --n" in err


def test_eval_formula_and_pred(tmp_path, capsys):
    g = tmp_path / "d12.json"
    run(capsys, "gen", "--family", "power", "--n", "12", "-o", str(g))
    lib = tmp_path / "lib.mso"
    lib.write_text("def deg1(x) := exists! y. E(x, y)\n")
    code, out, _ = run(capsys, "eval", str(g), "--formula",
                       "exists x. (forall y. (x = y | E(x, y)))")
    assert code == 0 and out.strip() == "false"
    code, out, _ = run(capsys, "eval", str(g), "--library", str(lib),
                       "--pred", "deg1")
    assert code == 0 and out.split() == []  # no degree-1 vertices in D_12


def test_apply_builtin_and_pipeline(tmp_path, capsys):
    z4 = tmp_path / "z4.json"
    run(capsys, "gen", "--family", "bichain", "--n", "4", "--labels",
        "-o", str(z4))
    out = tmp_path / "g.json"
    code, _, _ = run(capsys, "apply", str(z4), "--interp", "psi-bichain",
                     "-o", str(out))
    assert code == 0
    H = LabeledGraph.from_json(out.read_text())
    assert is_isomorphic(H, grid(2, 2)) is not None
    code, _, _ = run(capsys, "apply", str(z4), "--pipeline",
                     "complement,complement", "-o", str(out))
    assert code == 0
    assert LabeledGraph.from_json(out.read_text()).edges == \
        LabeledGraph.from_json(z4.read_text()).edges


def test_apply_with_params(tmp_path, capsys):
    c4 = tmp_path / "c4.json"
    run(capsys, "gen", "--family", "grid", "--m", "2", "--n", "2",
        "-o", str(c4))
    out = tmp_path / "h.json"
    code, _, _ = run(capsys, "apply", str(c4), "--interp", "induced",
                     "--params", "Z={0,1}", "-o", str(out))
    assert code == 0
    assert LabeledGraph.from_json(out.read_text()).n == 2


def test_apply_phi_rejects_odd_n(tmp_path, capsys):
    g = tmp_path / "d11.json"
    run(capsys, "gen", "--family", "power", "--n", "11", "-o", str(g))
    code, _, err = run(capsys, "apply", str(g), "--interp", "phi-power",
                       "-o", str(tmp_path / "x.json"))
    assert code == 2 and "even" in err


def test_width_exact_and_certify(tmp_path, capsys):
    g = tmp_path / "c4.json"
    run(capsys, "gen", "--family", "grid", "--m", "2", "--n", "2",
        "-o", str(g))
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "width", str(g), "--measure", "cwd",
                       "--cert-out", str(cert))
    assert code == 0 and json.loads(out)["value"] == 2
    code, out, _ = run(capsys, "width", str(g), "--measure", "cwd",
                       "--certify", str(cert))
    assert code == 0 and json.loads(out)["certificate"] == "valid"
    # a certificate for the wrong graph fails with exit 1
    g2 = tmp_path / "p.json"
    run(capsys, "gen", "--family", "grid", "--m", "1", "--n", "4",
        "-o", str(g2))
    code, out, _ = run(capsys, "width", str(g2), "--measure", "cwd",
                       "--certify", str(cert))
    assert code == 1


def test_width_cap_is_exit_3(tmp_path, capsys):
    g = tmp_path / "d12.json"
    run(capsys, "gen", "--family", "power", "--n", "12", "-o", str(g))
    code, _, err = run(capsys, "width", str(g), "--measure", "cwd")
    assert code == 3 and "cap" in err


def test_verify_suite_and_report(tmp_path, capsys):
    rep = tmp_path / "rep.json"
    code, _, err = run(capsys, "verify", "--suite", "split", "--max-n", "3",
                       "--json", str(rep))
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["status"] == "pass"
    assert all(r["pass"] for r in data["records"])


def test_verify_seed_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--suite", "relativize", "--trials", "20",
        "--seed", "5", "--json", str(a))
    run(capsys, "verify", "--suite", "relativize", "--trials", "20",
        "--seed", "5", "--json", str(b))
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    strip = lambda d: [{k: r[k] for k in ("id", "parameters", "pass")}
                       for r in d["records"]]
    assert strip(ja) == strip(jb)
