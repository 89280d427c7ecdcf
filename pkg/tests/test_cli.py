import json

import networkx as nx
import pytest

from catalan_semiring.chain_maps import enumerate_class, leq
from catalan_semiring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_class(capsys):
    code, out, _ = run(capsys, "enumerate", "--class", "cminus", "--n", "3")
    lines = [line for line in out.splitlines() if not line.startswith("#")]
    assert code == 0 and lines == ["111", "112", "113", "122", "123"]
    assert "# count 5, expected 5" in out
    code, out, _ = run(capsys, "enumerate", "--class", "c", "--n", "1")
    assert [line for line in out.splitlines() if not line.startswith("#")] == ["1"]


def test_enumerate_shape_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--shape", "stair", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["count"] == doc["expected"] == 2
    assert doc["elements"] == [[[1, 0], [0, 1]], [[1, 1], [0, 1]]]


def test_enumerate_records(capsys):
    code, out, _ = run(capsys, "enumerate", "--class", "cminus", "--n", "3", "--format", "json", "--records")
    recs = json.loads(out)["elements"]
    assert recs[-1] == {"transformation": [1, 2, 3], "S": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                        "M": [[1, 0], [1, 1]], "PMP": [[1, 1], [0, 1]], "partition": [2, 1]}


def test_enumerate_cap_and_force(capsys, caplog):
    code, _, err = run(capsys, "enumerate", "--class", "o", "--n", "9")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "enumerate", "--class", "o", "--n", "9", "--force", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 24310 and "--force" in caplog.text


def test_represent(capsys):
    code, out, _ = run(capsys, "represent", "1244", "--map", "S")
    assert code == 0 and out.split() == ["1000", "0100", "0011", "0001"]
    code, out, _ = run(capsys, "represent", "123", "--map", "M")
    assert out.splitlines() == ["10", "11", "partition [2, 1]"]
    code, out, _ = run(capsys, "represent", "1134", "--map", "PMP", "--format", "json")
    assert json.loads(out)["matrix"] == [[1, 1, 1], [0, 1, 1], [0, 0, 0]]


def test_represent_domain_error(capsys):
    code, _, err = run(capsys, "represent", "132", "--map", "S")
    assert code == 2 and "not order-preserving" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "thm1", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["all_hold"]
    hom = next(v for v in doc["verdicts"] if v["name"].endswith("homomorphism"))
    assert hom["details"]["pairs_per_op"] == {"add": 196, "mul": 196}
    code, out, _ = run(capsys, "verify", "--theorem", "young-count", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdicts"][0]["details"]["count"] == 5
    code, out, _ = run(capsys, "verify", "--theorem", "complementarity", "--n", "1")
    assert code == 0 and "HOLDS" in out


def test_identity_commands(capsys):
    code, out, _ = run(capsys, "identity", "--paper-eq", "1", "--n", "2", "--target", "upper")
    assert code == 0 and out.startswith("holds")
    code, out, err = run(capsys, "identity", "--paper-eq", "2", "--n", "2", "--target", "csemiring:3", "--format", "json")
    doc = json.loads(out)
    verdict = doc["verdicts"][0]
    assert code == 1 and verdict["verdict"] == "fails"
    assert verdict["details"]["paper_witness"] == {
        "assignment": {"x": [2, 3, 3], "y": [2, 2, 3]},
        "lhs_value": [2, 3, 3],
        "rhs_value": [3, 3, 3],
        "separates": True,
    }
    assert verdict["details"]["witness_reproduces"]
    code, out, _ = run(capsys, "identity", "x = x", "--target", "upper", "--n", "2")
    assert code == 0
    code, _, err = run(capsys, "identity", "x ^", "--target", "upper", "--n", "2")
    assert code == 2
    code, _, err = run(capsys, "identity", "x y z = z y x", "--target", "upper:3", "--n", "3", "--budget", "10")
    assert code == 2 and "budget" in err


def test_identity_cminus_monoid(capsys):
    code, out, _ = run(capsys, "identity", "--paper-eq", "1", "--n", "2", "--target", "cminusmonoid:4", "--format", "json")
    verdict = json.loads(out)["verdicts"][0]
    assert code == 1 and verdict["details"]["paper_witness"]["separates"]


def test_hasse(capsys, tmp_path):
    code, out, _ = run(capsys, "hasse", "--class", "o", "--n", "3")
    assert code == 0 and out.count("->") == 12 and '"111" -> "112";' in out
    code, out, _ = run(capsys, "hasse", "--class", "cminus", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert len(doc["nodes"]) == 2 and len(doc["edges"]) == 1
    target = tmp_path / "c3.json"
    run(capsys, "hasse", "--class", "c", "--n", "3", "--format", "json", "--output", str(target))
    doc = json.loads(target.read_text())
    items = enumerate_class(3, "c")
    g = nx.DiGraph()
    g.add_edges_from((str(a), str(b)) for a in items for b in items if a != b and leq(a, b))
    assert len(doc["nodes"]) == 5
    assert {tuple(e) for e in doc["edges"]} == set(nx.transitive_reduction(g).edges())
    code, _, _ = run(capsys, "hasse", "--class", "o", "--n", "5")
    assert code == 2


def test_young(capsys):
    code, out, _ = run(capsys, "young", "--n", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and [p["partition"] for p in doc["pairs"]] == [[], [1], [2], [1, 1], [2, 1]]
    assert doc["pairs"][4]["M"] == [[1, 0], [1, 1]] and doc["pairs"][4]["transformation"] == [1, 2, 3]
    code, out, _ = run(capsys, "young", "--n", "1", "--format", "json")
    assert len(json.loads(out)["pairs"]) == 2
    code, out, _ = run(capsys, "young", "--n", "8", "--count-only")
    assert out.strip() == "4862"
    code, _, _ = run(capsys, "young", "--n", "7")
    assert code == 2


def test_complement(capsys):
    code, out, _ = run(capsys, "complement", "1244", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["agree"]
    assert doc["alpha_bar"] == [1, 1, 3, 4]
    assert doc["cropped"] == doc["PMP_bar"] == [[1, 1, 1], [0, 1, 1], [0, 0, 0]]


@pytest.mark.parametrize("n_max", [1, 2])
def test_report_all_small(capsys, n_max):
    code, out, _ = run(capsys, "report-all", "--n-max", str(n_max), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["all_hold"] and doc["counts"]["checks"] == len(doc["verdicts"])


def test_report_all_deterministic_json(capsys):
    _, first, _ = run(capsys, "report-all", "--n-max", "2", "--format", "json")
    _, second, _ = run(capsys, "report-all", "--n-max", "2", "--format", "json", "--jobs", "2")
    a, b = json.loads(first), json.loads(second)
    a.pop("wall_time_s"), b.pop("wall_time_s")
    assert a == b


def test_failure_exit_code(capsys, monkeypatch):
    from catalan_semiring import cli
    from catalan_semiring.algebra_core import CheckReport

    monkeypatch.setitem(cli.THEOREMS, "thm1", lambda n: [CheckReport("broken", "fails", witness={"x": 1})])
    code, _, err = run(capsys, "verify", "--theorem", "thm1", "--n", "2")
    assert code == 1 and json.loads(err)["failures"][0]["name"] == "broken"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate"])
    assert exc.value.code == 2
