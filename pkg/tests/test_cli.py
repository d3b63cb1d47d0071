import json

from click.testing import CliRunner

from thetasat.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_exponents():
    r = run("exponents", "--a", "100", "--b", "3")
    assert r.exit_code == 0
    assert "1/m2\t200/299" in r.output


def test_bad_config_exits_2(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"supersat": {"warp": 9}}))
    r = CliRunner().invoke(main, ["--config", str(cfg), "exponents", "--a", "3", "--b", "3"])
    assert r.exit_code == 2
    cfg.write_text("{not json")
    r = CliRunner().invoke(main, ["--config", str(cfg), "exponents", "--a", "3", "--b", "3"])
    assert r.exit_code == 2


def test_experiment_deterministic_and_full_row():
    args = ["--seed", "5", "experiment", "--n", "8", "--trials", "2", "--p-grid", "0.5,1"]
    a, b = run(*args), run(*args)
    assert a.exit_code == 0 and a.output == b.output
    lines = a.output.splitlines()
    assert lines[0].startswith("# thetasat experiment v1")
    assert lines[1] == "n,p,trial,edges,deletion,greedy,exact"
    full = [l.split(",") for l in lines[2:] if l.split(",")[1] == "1"]
    # ex(K_8, C_4) = 11
    assert full and all(row[6] == "11" for row in full)


def test_supersat_writes_artifacts(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"supersat": {"max_hyperedges": 5}}))
    r = run("--config", str(cfg), "--out", str(tmp_path / "o"), "supersat", "--n", "14")
    assert r.exit_code == 0
    man = json.loads((tmp_path / "o" / "manifest.json").read_text())
    assert man["hyperedges"] == 5 and man["stop_reason"] == "Budget"
    assert len((tmp_path / "o" / "hyperedges.jsonl").read_text().splitlines()) == 5


def test_check_bounds_large_a():
    r = run("check-bounds", "--a", "100", "--b", "3", "--no-grid")
    assert r.exit_code == 0
    assert r.output.startswith("# thetasat check-bounds v1")
    assert "overall: feasible" in r.output


def test_verify_expansion_k16():
    r = run("verify-expansion", "--b", "3", "--n", "16")
    assert r.exit_code == 0
    rep = json.loads(r.output)
    assert rep["detail"]["t"] == 2 and all(v > 0 for v in rep["clauses"].values())


def test_containers_command():
    r = run("--seed", "3", "containers", "--N", "10", "--m", "15")
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["uncovered"] == 0 and out["loss_ok"] and out["exhaustive"]


def test_missing_host_is_usage_error():
    r = CliRunner().invoke(main, ["verify-expansion", "--n", "0"])
    assert r.exit_code != 0
