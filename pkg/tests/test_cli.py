import json

import numpy as np
import pytest
from conftest import matching_pennies

from anongames.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_then_solve_pure(tmp_path, capsys):
    game_file = tmp_path / "g.json"
    code, _, _ = run(capsys, "gen", "--n", "6", "--s", "2", "--lambda", "0.05", "--seed", "1", "--out", str(game_file))
    assert code == 0
    data = json.loads(game_file.read_text())
    assert data["n"] == 6 and data["s"] == 2 and data["lambda"] == 0.05
    code, out, _ = run(capsys, "solve-pure", "--game", str(game_file), "--auto", "--min-eps")
    assert code == 0
    report = json.loads(out)
    assert report["declared_lambda_valid"] is True
    assert report["max_regret"] <= report["feasibility_threshold"]
    assert report["min_threshold"] <= report["max_regret"]

    report_file = tmp_path / "r.json"
    report_file.write_text(out)
    code, out, _ = run(capsys, "check", "--report", str(report_file), "--game", str(game_file))
    assert code == 0 and json.loads(out)["passed"]


def test_gen_is_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "--n", "5", "--s", "3", "--lambda", "0.02", "--seed", "42")
    _, b, _ = run(capsys, "gen", "--n", "5", "--s", "3", "--lambda", "0.02", "--seed", "42")
    assert a == b


def test_solve_pure_infeasible_eps(tmp_path, capsys):
    game_file = tmp_path / "mp.json"
    game_file.write_text(json.dumps(matching_pennies().to_dict()))
    code, out, _ = run(capsys, "solve-pure", "--game", str(game_file), "--eps", "0.5")
    assert code == 1
    assert json.loads(out)["feasible"] is False


def test_declared_lambda_too_small(tmp_path, capsys):
    doc = matching_pennies().to_dict()
    doc["lambda"] = 0.1
    game_file = tmp_path / "mp.json"
    game_file.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "solve-pure", "--game", str(game_file))
    assert code == 1
    assert json.loads(out)["declared_lambda_valid"] is False


def test_solve_ptas_and_check(tmp_path, capsys):
    rng = np.random.default_rng(0)
    game_file = tmp_path / "g.json"
    game_file.write_text(json.dumps({"n": 5, "s": 2, "utilities": rng.random((5, 2, 5)).tolist()}))
    code, out, _ = run(capsys, "solve-ptas", "--game", str(game_file), "--eps", "0.3", "--k", "6")
    assert code == 0
    report = json.loads(out)
    assert report["k_used"] == 6 and report["exact_regret"] <= report["threshold_used"] + 1e-9
    report_file = tmp_path / "r.json"
    report_file.write_text(out)
    code, out, _ = run(capsys, "check", "--report", str(report_file), "--game", str(game_file))
    assert code == 0

    tampered = dict(report, exact_regret=report["exact_regret"] + 0.1)
    report_file.write_text(json.dumps(tampered))
    code, out, _ = run(capsys, "check", "--report", str(report_file), "--game", str(game_file))
    assert code == 1


def test_solve_ptas_budget_refusal(tmp_path, capsys):
    rng = np.random.default_rng(0)
    game_file = tmp_path / "g.json"
    game_file.write_text(json.dumps({"n": 8, "s": 2, "utilities": rng.random((8, 2, 8)).tolist()}))
    code, out, err = run(capsys, "solve-ptas", "--game", str(game_file), "--eps", "0.05", "--budget", "1000")
    assert code == 2
    assert "smaller k" in err and out == ""


def test_round_plain_text_and_json(tmp_path, capsys, monkeypatch):
    vec = tmp_path / "p.txt"
    vec.write_text("0.05 0.05\n0.05\n0.05\n")
    code, out, _ = run(capsys, "round", str(vec), "--k", "10")
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == pytest.approx([0.1, 0.1, 0.0, 0.0])
    assert "workspaces" in doc

    vec.write_text("[0.95, 0.95, 0.95, 0.95]")
    code, out, _ = run(capsys, "round", str(vec), "--k", "10")
    assert json.loads(out)["q"] == pytest.approx([0.9, 0.9, 1.0, 1.0])

    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("0.355\n0.355\n"))
    code, out, _ = run(capsys, "round", "--k", "100")
    assert json.loads(out)["q"] == pytest.approx([0.36, 0.35])

    report_file = tmp_path / "r.json"
    report_file.write_text(out)
    code, out, _ = run(capsys, "check", "--report", str(report_file))
    assert code == 0


def test_round_usage_errors(tmp_path, capsys):
    vec = tmp_path / "p.txt"
    vec.write_text("0.5 abc")
    assert run(capsys, "round", str(vec), "--k", "10")[0] == 2
    vec.write_text("0.5 1.5")
    assert run(capsys, "round", str(vec), "--k", "10")[0] == 2
    vec.write_text("0.5")
    assert run(capsys, "round", str(vec), "--k", "1")[0] == 2
    assert run(capsys, "round", str(tmp_path / "missing"), "--k", "10")[0] == 2


def test_verify_naive_counterexample(capsys):
    code, out, _ = run(capsys, "verify", "naive-counterexample")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"]
    values = {r["claim"]: r for r in doc["reports"]}
    assert values["naive TV value"]["measured"] == pytest.approx(0.6340, abs=1e-4)
    assert values["carry rounding TV <= 0.2"]["measured"] <= 0.2


def test_verify_quick_suite_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "poisson-bounds", "--quick", "--seed", "3")
    _, b, _ = run(capsys, "verify", "poisson-bounds", "--quick", "--seed", "3")
    strip = lambda doc: [{k: v for k, v in r.items() if k != "runtime"} for r in json.loads(doc)["reports"]]
    assert strip(a) == strip(b)


def test_verify_parallel_matches_serial(capsys, monkeypatch):
    _, serial, _ = run(capsys, "verify", "pure-bound", "--quick")
    monkeypatch.setenv("ANONGAME_WORKERS", "2")
    _, parallel, _ = run(capsys, "verify", "pure-bound", "--quick")
    strip = lambda doc: [(r["claim"], r["measured"]) for r in json.loads(doc)["reports"] if "time" not in r["claim"]]
    assert strip(serial) == strip(parallel)


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    assert run(capsys, "solve-pure", "--game", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "s": 2, "utilities": [[[0.5]]]}))
    assert run(capsys, "solve-pure", "--game", str(bad))[0] == 2
    code, _, err = run(capsys, "frobnicate")
    assert "usage" in err


def test_bench(capsys):
    code, out, _ = run(capsys, "bench")
    assert code == 0
    assert all(v >= 0 for v in json.loads(out)["seconds"].values())
