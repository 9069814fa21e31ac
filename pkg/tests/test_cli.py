import json

from interlab.cli import emit_report, run
from interlab.logic import models, parse_formula
from interlab.space import Signature


def go(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, out


def go_json(capsys, argv):
    code, out = go(capsys, argv + ["--format", "json"])
    return code, json.loads(out)


# ----------------------------------------------------------------- interp

def test_mono_prints_interpolant(capsys):
    code, out = go(capsys, ["interp", "mono", "--phi", "p & q", "--psi", "p | r"])
    assert code == 0
    assert 'interpolant: "p"' in out


def test_mono_json_roundtrips(capsys):
    code, doc = go_json(capsys, ["interp", "mono", "--phi", "p & q", "--psi", "p | r"])
    assert code == 0
    assert doc["report_version"] == 1
    f = parse_formula(doc["interpolant"])
    sig = Signature.boolean("p", "q", "r")
    assert [list(t) for t in sorted(models(f, sig).tuples)] == doc["models"]


def test_mono_non_entailment_exits_1(capsys):
    code, doc = go_json(capsys, ["interp", "mono", "--phi", "p", "--psi", "q"])
    assert code == 1
    assert doc["entailment"] is False and "witness" in doc


def test_mono_parse_error_exits_2(capsys):
    code = run(["interp", "mono", "--phi", "p ->", "--psi", "q"])
    assert code == 2


def test_nm_form1_chain_fails(capsys):
    code, doc = go_json(capsys, [
        "interp", "nm", "--form", "1", "--relation", "chain-example-4.1",
        "--phi", "!p", "--psi", "!q",
    ])
    assert code == 1
    assert doc["failure"]["kind"] == "vocabulary"


def test_nm_form2_chain_fails_with_witness(capsys):
    code, doc = go_json(capsys, [
        "interp", "nm", "--form", "2", "--relation", "chain-example-4.1",
        "--phi", "!p", "--psi", "!q",
    ])
    assert code == 1
    assert doc["failure"]["witness"] == [1, 1]


def test_nm_form3_search_absent(capsys):
    code, doc = go_json(capsys, [
        "interp", "nm", "--form", "3", "--relation", "chain-example-4.1",
        "--phi", "!p", "--psi", "!q",
    ])
    assert code == 1
    assert doc["interpolant"] is None


def test_nm_form2_circumscription_verify_rules(capsys):
    code, doc = go_json(capsys, [
        "interp", "nm", "--form", "2", "--relation", "circumscription",
        "--sig", "p,q", "--phi", "p & q", "--psi", "q", "--verify-rules",
    ])
    assert code == 0
    assert doc["interpolant"] == "q"
    assert all(v["status"] == "holds" for v in doc["rule_checks"].values())
    assert parse_formula(doc["interpolant"]) is not None


def test_nm_non_consequence_exits_1(capsys):
    code, doc = go_json(capsys, [
        "interp", "nm", "--form", "1", "--relation", "chain-example-4.1",
        "--phi", "true", "--psi", "!q",
    ])
    assert code == 1
    assert doc["consequence"] is False


# ------------------------------------------------------------------ check

def test_check_rule_chain_witness_json(capsys):
    code, doc = go_json(capsys, [
        "check", "rule", "--rule", "mu2", "--relation", "chain-example-4.1",
    ])
    assert code == 1
    assert doc["status"] == "fails"
    assert doc["witness"]["sigma"] == [[0, 0], [0, 1]]
    assert doc["witness"]["gamma"] == [[0, 0]]


def test_check_rule_circumscription_holds(capsys):
    code, doc = go_json(capsys, [
        "check", "rule", "--rule", "mu1", "--relation", "circumscription",
        "--sig", "p,q", "--split", "p/q",
    ])
    assert code == 0 and doc["status"] == "holds"


def test_check_hamming(capsys):
    code, doc = go_json(capsys, [
        "check", "hamming", "--relation", "circumscription", "--sig", "p,q",
        "--split", "p/q",
    ])
    assert code == 0 and doc["status"] == "holds"
    code, doc = go_json(capsys, [
        "check", "hamming", "--relation", "chain-example-4.1", "--split", "p/q",
    ])
    assert code == 1 and doc["status"] == "fails"


def test_check_smooth(capsys):
    code, doc = go_json(capsys, [
        "check", "smooth", "--relation", "chain-example-4.1",
    ])
    assert code == 0 and doc["status"] == "holds"


def test_check_rule_from_problem_bundle(tmp_path, capsys):
    bundle = {
        "signature": [{"name": "p", "k": 2}, {"name": "q", "k": 2}],
        "relations": {"mine": {"pairs": [[[0, 0], [1, 1]], [[1, 1], [0, 0]]]}},
    }
    path = tmp_path / "bundle.json"
    path.write_text(json.dumps(bundle))
    code, doc = go_json(capsys, [
        "check", "smooth", "--relation", "mine", "--problem", str(path),
    ])
    assert code == 1
    assert doc["witness"]["set"] == [[0, 0], [1, 1]]


def test_relation_file_requires_sig(tmp_path, capsys):
    path = tmp_path / "rel.json"
    path.write_text(json.dumps({"pairs": [[[0, 0], [1, 1]]]}))
    code = run(["check", "smooth", "--relation", str(path)])
    assert code == 2
    code, doc = go_json(capsys, [
        "check", "smooth", "--relation", str(path), "--sig", "p,q",
    ])
    assert code == 0


def test_bad_bundle_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"signature": [{"name": "p", "k": 2}],
                                "formulas": {"f": "p & z"}}))
    code = run(["check", "smooth", "--relation", "x", "--problem", str(path)])
    assert code == 2


# ------------------------------------------------------------------ revise

def test_revise_json_contract(capsys):
    code, doc = go_json(capsys, ["revise", "--k", "p & q", "--phi", "!p"])
    assert code == 0
    assert doc["result"] == [[0, 1]]
    assert doc["min_distance"] == [1]
    assert doc["decomposed"] is False


def test_revise_split_decomposes(capsys):
    code, doc = go_json(capsys, [
        "revise", "--k", "p & q", "--phi", "!p & !q", "--split", "p/q",
    ])
    assert code == 0
    assert doc["decomposed"] is True and doc["result"] == [[0, 0]]


def test_revise_weights(tmp_path, capsys):
    wpath = tmp_path / "w.json"
    wpath.write_text(json.dumps({"p": 1, "q": 2}))
    code, doc = go_json(capsys, [
        "revise", "--k", "p & q", "--phi", "!p | !q",
        "--weights", str(wpath),
    ])
    assert code == 0
    assert doc["result"] == [[0, 1]]  # flipping p is cheaper
    assert doc["min_distance"] == [1]


def test_revise_set_variant(capsys):
    code, doc = go_json(capsys, [
        "revise", "--k", "p & q", "--phi", "!p | !q", "--distance", "set",
    ])
    assert code == 0
    assert doc["result"] == [[0, 1], [1, 0]]
    assert doc["min_distance"] == [["p"], ["q"]]


def test_revise_inconsistent_exits_2(capsys):
    code = run(["revise", "--k", "p & !p", "--phi", "q"])
    assert code == 2


# ---------------------------------------------------------------- examples

def test_examples_run_chain(capsys):
    code, out = go(capsys, ["examples", "run", "chain-4.1"])
    assert code == 0
    assert "reproduced: true" in out


def test_examples_run_all_json(capsys):
    code, doc = go_json(capsys, ["examples", "run", "all"])
    assert code == 0
    names = {r["name"] for r in doc["results"]}
    assert names == {"chain-4.1", "component-inverse-4.4", "prod-size-4.2",
                     "circumscription-hamming-4.3", "godel4-3.1"}
    assert doc["reproduced"] is True


def test_examples_unknown_exits_2(capsys):
    assert run(["examples", "run", "nothing-here"]) == 2


def test_examples_list(capsys):
    code, doc = go_json(capsys, ["examples", "list"])
    assert code == 0 and "chain-4.1" in doc["examples"]


# ------------------------------------------------------------------- report

def test_emit_report_stability():
    report = {"b": 1, "a": 2}
    assert emit_report(report, "json") == emit_report(report, "json")
    doc = json.loads(emit_report(report, "json"))
    assert list(doc) == ["report_version", "b", "a"]  # insertion order kept


def test_usage_error_exit_code():
    assert run(["interp"]) == 2
    assert run(["check", "rule", "--rule", "mu9", "--relation", "chain-example-4.1"]) == 2


def test_formula_from_file(tmp_path, capsys):
    fpath = tmp_path / "formulas.txt"
    fpath.write_text("p & q\np | r\n", encoding="utf-8")
    code, doc = go_json(capsys, [
        "interp", "mono", "--phi", f"@{fpath}", "--psi", f"@{fpath}:2",
    ])
    assert code == 0 and doc["interpolant"] == "p"
    code = run(["interp", "mono", "--phi", f"@{fpath}:9", "--psi", "p"])
    assert code == 2


def test_budget_env_forces_sampling(monkeypatch, capsys):
    monkeypatch.setenv("INTERLAB_BUDGET", "4")
    code, doc = go_json(capsys, [
        "check", "smooth", "--relation", "chain-example-4.1", "--seed", "3",
    ])
    assert doc["exhaustive"] is False
    monkeypatch.delenv("INTERLAB_BUDGET")
