import json
import os

import pytest

from conftest import c5, k4, petersen
from covdex import format_graph, write_graph
from covdex.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def k4_path(tmp_path):
    path = tmp_path / "k4.graph"
    write_graph(k4(), str(path))
    return str(path)


@pytest.fixture
def c5_path(tmp_path):
    path = tmp_path / "c5.graph"
    write_graph(c5(), str(path))
    return str(path)


def test_bound_payload(capsys, k4_path):
    code, out, err = run_cli(capsys, "bound", k4_path)
    assert code == 0
    assert json.loads(out) == {"delta": 3, "codensity": "3/1", "k": 2}
    report = json.loads(err)
    assert report["outcome"] == "ok"
    assert report["command"] == "bound"
    assert len(report["input_sha256"]) == 64


def test_codensity_payload(capsys, c5_path):
    code, out, _ = run_cli(capsys, "codensity", c5_path)
    assert code == 0
    payload = json.loads(out)
    assert payload["codensity"] == "5/3"
    assert payload["witness"] == [0, 1, 2, 3, 4]


def test_color_found_and_impossible(capsys, k4_path):
    code, out, _ = run_cli(capsys, "color", k4_path, "-m", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "found"
    assert len(payload["assignment"]) == 6
    code, out, _ = run_cli(capsys, "color", k4_path, "-m", "2")
    assert code == 0
    assert json.loads(out)["status"] == "impossible"


def test_color_budget_exit_code(capsys, tmp_path):
    path = tmp_path / "petersen.graph"
    write_graph(petersen(), str(path))
    code, out, _ = run_cli(capsys, "color", str(path), "-m", "3", "--budget", "5")
    assert code == 3
    assert json.loads(out)["status"] == "budget"


def test_decompose_writes_covers_that_verify(capsys, tmp_path, c5_path):
    covers_path = tmp_path / "covers.json"
    code, out, _ = run_cli(capsys, "decompose", c5_path, "--json", str(covers_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 1
    assert json.loads(covers_path.read_text()) == payload

    code, out, _ = run_cli(capsys, "verify", c5_path, str(covers_path))
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_verify_rejects_bad_covers(capsys, tmp_path, k4_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"k": 2, "covers": [[0, 1], [0, 2]]}))
    code, out, _ = run_cli(capsys, "verify", k4_path, str(bad))
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    assert payload["problems"]


def test_xi_payload(capsys, k4_path):
    code, out, _ = run_cli(capsys, "xi", k4_path)
    assert code == 0
    assert json.loads(out) == {"xi": 3}


def test_usage_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "bogus-command")
    assert code == 2
    assert out == ""
    assert "usage" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run_cli(capsys, "bound", "/nonexistent/g.graph")
    assert code == 2


def test_malformed_graph_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.graph"
    path.write_text("v 2\ne 0 0\n")
    code, _, err = run_cli(capsys, "bound", str(path))
    assert code == 2
    assert "GraphFormatError" in err


def test_too_large_exit_code(capsys, tmp_path, k4_path):
    code, _, err = run_cli(capsys, "codensity", k4_path, "--cap", "2")
    assert code == 3
    assert "TooLarge" in err


def test_fuzz_summary_and_report(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "fuzz", "--n", "5", "--count", "15", "--seed", "42",
        "--report", str(report),
    )
    assert code == 0
    summary = json.loads(out)
    assert summary["instances"] == 15
    assert summary["anomalies"] == 0
    data = json.loads(report.read_text())
    assert len(data["records"]) == 15
    assert data["summary"] == summary


def test_fuzz_parallel_jobs_matches_serial(capsys):
    serial = run_cli(capsys, "fuzz", "--n", "5", "--count", "12", "--seed", "5")
    parallel = run_cli(
        capsys, "fuzz", "--n", "5", "--count", "12", "--seed", "5", "--jobs", "2"
    )
    assert serial[0] == parallel[0] == 0
    assert serial[1] == parallel[1]  # deterministic merge, ordered by index


def test_fuzz_env_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("COVDEX_SEED", "77")
    code, out, _ = run_cli(capsys, "fuzz", "--n", "4", "--count", "5", "--seed", "1")
    assert code == 0
    assert json.loads(out)["seed"] == 77


def test_pretty_flag(capsys, k4_path):
    code, out, _ = run_cli(capsys, "--pretty", "bound", k4_path)
    assert code == 0
    assert out.count("\n") > 1
    assert json.loads(out)["k"] == 2


def test_stdout_is_byte_identical_across_runs(capsys, k4_path, c5_path):
    for argv in (
        ["bound", k4_path],
        ["codensity", c5_path],
        ["decompose", c5_path],
        ["xi", k4_path],
        ["color", k4_path, "-m", "4"],
        ["fuzz", "--n", "5", "--count", "10", "--seed", "9"],
    ):
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second, argv


def test_dot_export(capsys, tmp_path, c5_path):
    dot_dir = tmp_path / "dots"
    code, _, _ = run_cli(capsys, "decompose", c5_path, "--dot", str(dot_dir))
    assert code == 0
    files = list(dot_dir.iterdir())
    assert len(files) == 1
    text = files[0].read_text()
    assert text.startswith("digraph") and "->" in text


def test_decompose_dump_on_fail(capsys, tmp_path):
    # an instance outside both hypotheses that fails at the degree bound
    from covdex import random_multigraph
    from covdex.oracle import FuzzConfig

    g = random_multigraph(
        FuzzConfig(n=5, max_multiplicity=5, edge_probability=0.7, seed=200000)
    )
    path = tmp_path / "hard.graph"
    write_graph(g, str(path))
    dump_dir = tmp_path / "dumps"
    code, out, _ = run_cli(
        capsys, "decompose", str(path), "--dump-on-fail", str(dump_dir)
    )
    assert code == 4  # counterexample candidate: hypotheses do not hold
    payload = json.loads(out)
    assert payload["failed_stage"] == "special-coloring"
    dumps = list(dump_dir.iterdir())
    assert len(dumps) == 1
    state = json.loads(dumps[0].read_text())
    assert "original" in state and "contracted" in state
