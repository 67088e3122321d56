import json

import pytest

from endgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_degrees_on_theorem3(capsys):
    code, out, _ = run(capsys, "degrees", "--family", "theorem3", "--k", "3", "--region", "s=S:0-1")
    data = json.loads(out)
    assert code == 0
    assert data["min_out_degree"] == 3
    assert data["avg_out_degree"] == "3"
    assert data["boundary"] == ["T0", "T1"]
    assert data["complement_components"] == 1


def test_extract2_clique_ray(capsys, tmp_path):
    code, out, _ = run(capsys, "extract2", "--family", "clique_ray", "--k", "4")
    data = json.loads(out)
    assert code == 0
    assert data["H"]["min_degree"] >= 4
    report = tmp_path / "r.json"
    report.write_text(out)
    code, out, _ = run(capsys, "verify", "certificate", "--family", "clique_ray", "--k", "4", "--report", str(report))
    assert code == 0 and json.loads(out)["certificate"] == "valid"
    data["H"]["degrees"][data["H"]["vertices"][0]] += 1
    report.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "certificate", "--family", "clique_ray", "--k", "4", "--report", str(report))
    assert code == 1


def test_kcore_of_theorem3_ball_is_empty(capsys):
    code, out, _ = run(capsys, "verify", "kcore", "--family", "theorem3", "--k", "3", "--ball", "root,5")
    assert code == 0 and out.strip() == "empty"


def test_kcore_of_clique_ray_ball(capsys):
    code, out, _ = run(capsys, "verify", "kcore", "--family", "clique_ray", "--k", "3", "--ball", "root,3")
    assert json.loads(out)["core"]


def test_premise_failure_exit_code(capsys):
    code, _, err = run(capsys, "extract2", "--family", "branching_tree", "--k", "2")
    assert code == 3
    assert "error" in err


def test_budget_exit_codes(capsys):
    code, _, _ = run(capsys, "extract2", "--family", "theorem3", "--k", "3", "--budget-iter", "2")
    assert code == 2
    code, _, _ = run(capsys, "extract4", "--family", "branching_tree", "--k", "2")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["extract2"],
    ["bogus"],
    ["degrees", "--family", "theorem3", "--region", "s=nowhere"],
    ["gen", "--family", "no_such_family"],
    ["verify", "certificate", "--family", "clique_ray"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 4


def test_dot_and_gen(capsys, tmp_path):
    code, dot, _ = run(capsys, "dot", "--family", "clique_ray", "--k", "2", "--ball", "root,2")
    assert code == 0 and dot.startswith("graph")
    path = tmp_path / "w.dot"
    path.write_text(dot)
    code, out, _ = run(capsys, "verify", "brute", "--dot", str(path), "--k", "2")
    assert json.loads(out)["exists"]
    code, out, _ = run(capsys, "gen", "--family", "branching_tree", "--k", "2", "--ball", "root,2")
    assert len(json.loads(out)["window"]["vertices"]) == 7


def test_nest_and_intro(capsys):
    code, out, _ = run(capsys, "nest", "--family", "clique_ray", "--k", "3", "--rays", "2", "--prefix", "10")
    data = json.loads(out)
    assert code == 0 and data["first_crossing"] is None and len(data["regions"]) == 10
    code, out, _ = run(capsys, "intro", "--family", "branching_tree", "--k", "2")
    assert json.loads(out)["result"] == "bad_chain"


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = run(capsys, "inspect", "--family", "theorem3", "--vertex", "T", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["vertex"] == "T"


@pytest.mark.parametrize("argv", [
    ["extract2", "--family", "clique_ray", "--k", "3", "--rays", "2", "--seed", "7"],
    ["extract4", "--family", "clique_ray", "--k", "3", "--rays", "2", "--cross", "3"],
    ["verify", "highest", "--family", "theorem3", "--k", "3", "--ball", "root,3", "--seed", "5"],
])
def test_identical_runs_are_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
