"""CLI tests for the coloc command."""

from __future__ import annotations

import json

import pytest

from CoLoc import __version__
from CoLoc.cli.main import EXIT_FIELD, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, app

DEPENDENT_TRIPLE = {
    "name": "dependent-triple",
    "modulus": 97,
    "function": {"literal": [[{"coeff": 1, "exps": [1, 1]}]]},
    "inputs": {"points": [[0, 1], [2, 0], [2, 1]]},
    "s": 1,
    "scheme": "homogeneous",
}


@pytest.fixture(autouse=True)
def _plain_output(monkeypatch) -> None:
    monkeypatch.setenv("COLOC_COLOR_OUTPUT", "0")


def _write(tmp_path, payload, name: str = "scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_plan_prints_query_plan(capsys, tmp_path) -> None:
    exit_code = app(["plan", "--scenario", _write(tmp_path, DEPENDENT_TRIPLE)])

    captured = capsys.readouterr()
    plan = json.loads(captured.out)
    assert exit_code == EXIT_OK
    assert plan["scheme"] == "homogeneous"
    assert plan["w"] == 4
    assert plan["baseline_oblivious"] == 6
    assert "homogeneous: w=4" in captured.err


def test_plan_scheme_override_and_out_file(capsys, tmp_path) -> None:
    out = tmp_path / "plan.json"
    exit_code = app(["plan", "--scenario", _write(tmp_path, DEPENDENT_TRIPLE), "--scheme", "replication", "--out", str(out)])

    assert exit_code == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["w"] == 6
    assert f"wrote {out}" in capsys.readouterr().err


def test_run_reports_verified_simulation(capsys, tmp_path) -> None:
    exit_code = app(["run", "--scenario", _write(tmp_path, DEPENDENT_TRIPLE), "--seed", "7"])

    report = json.loads(capsys.readouterr().out)
    assert exit_code == EXIT_OK
    assert report["verified"] is True
    assert report["patterns"] == 5
    assert report["seed"] == 7
    assert report["plan"]["w"] == 4


def test_invalid_modulus_exits_with_input_error(capsys, tmp_path) -> None:
    exit_code = app(["plan", "--scenario", _write(tmp_path, {**DEPENDENT_TRIPLE, "modulus": 4})])

    captured = capsys.readouterr()
    assert exit_code == EXIT_INPUT
    assert "error: invalid scenario - modulus 4 is not prime" in captured.err
    assert captured.out == ""


def test_small_field_exits_with_field_error_and_hint(capsys, tmp_path) -> None:
    payload = {
        "modulus": 5,
        "function": {"generator": "random", "degree": 2, "m": 2, "seed": 1},
        "inputs": {"generator": "generic", "k": 4, "m": 2, "seed": 1},
        "s": 1,
        "scheme": "lcc",
    }
    exit_code = app(["plan", "--scenario", _write(tmp_path, payload)])

    captured = capsys.readouterr()
    assert exit_code == EXIT_FIELD
    assert "hint:  use a prime modulus of at least 8" in captured.err


def test_sweep_failure_exits_with_verify_error(capsys, tmp_path) -> None:
    small = {
        "modulus": 5,
        "function": {"generator": "random", "degree": 2, "m": 2, "seed": 1},
        "inputs": {"generator": "generic", "k": 4, "m": 2, "seed": 1},
        "s": 1,
        "scheme": "lcc",
    }
    exit_code = app(["sweep", "--scenario", _write(tmp_path, {"scenarios": [DEPENDENT_TRIPLE, small]}), "--format", "json"])

    captured = capsys.readouterr()
    rows = json.loads(captured.out)
    assert exit_code == EXIT_VERIFY
    assert [row["verified"] for row in rows] == [True, False]
    assert rows[1]["error"] == "field-too-small"


def test_sweep_acceptance_prints_csv_table(capsys) -> None:
    exit_code = app(["sweep", "--acceptance"])

    lines = capsys.readouterr().out.strip().splitlines()
    assert exit_code == EXIT_OK
    assert lines[0] == "scheme,k,d,s,b,w,baseline,verified"
    assert len(lines) == 10
    assert all(line.endswith(",true") for line in lines[1:])


def test_plan_accepts_seed_without_changing_the_plan(capsys, tmp_path) -> None:
    path = _write(tmp_path, DEPENDENT_TRIPLE)
    assert app(["plan", "--scenario", path]) == EXIT_OK
    unseeded = capsys.readouterr().out
    assert app(["plan", "--scenario", path, "--seed", "11"]) == EXIT_OK
    seeded = capsys.readouterr().out

    assert json.loads(seeded) == json.loads(unseeded)


def test_sweep_out_writes_csv_and_json_side_by_side(capsys, tmp_path) -> None:
    out = tmp_path / "table.csv"
    exit_code = app(["sweep", "--scenario", _write(tmp_path, [DEPENDENT_TRIPLE]), "--out", str(out)])

    err = capsys.readouterr().err
    assert exit_code == EXIT_OK
    lines = out.read_text(encoding="utf-8").strip().splitlines()
    assert lines == ["scheme,k,d,s,b,w,baseline,verified", "homogeneous,3,2,1,0,4,6,true"]
    rows = json.loads((tmp_path / "table.json").read_text(encoding="utf-8"))
    assert [(row["name"], row["w"], row["verified"]) for row in rows] == [("dependent-triple", 4, True)]
    assert f"wrote {out}" in err
    assert f"wrote {tmp_path / 'table.json'}" in err


def test_sweep_json_out_keeps_both_files_distinct(tmp_path) -> None:
    out = tmp_path / "table.json"
    exit_code = app(["sweep", "--scenario", _write(tmp_path, [DEPENDENT_TRIPLE]), "--format", "json", "--out", str(out)])

    assert exit_code == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))[0]["w"] == 4
    assert (tmp_path / "table.csv").read_text(encoding="utf-8").startswith("scheme,k,d,s,b,w,baseline,verified")


def test_locality_command(capsys) -> None:
    exit_code = app(["locality", "--q", "5", "--m", "1", "--d", "2", "--k", "2", "--s", "1"])

    report = json.loads(capsys.readouterr().out)
    assert exit_code == EXIT_OK
    assert report["locality"] <= 4
    assert report["upper_bound"] == 4


def test_locality_budget_exits_with_input_error(capsys) -> None:
    exit_code = app(["locality", "--q", "5", "--m", "1", "--d", "1", "--k", "2", "--s", "2"])

    assert exit_code == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_matmul_command(capsys) -> None:
    exit_code = app(["matmul", "--size", "4", "--t", "2", "--s", "1", "--scheme", "matdot", "--modulus", "97"])

    report = json.loads(capsys.readouterr().out)
    assert exit_code == EXIT_OK
    assert report["w"] == 4
    assert report["verified"] is True


def test_version_command(capsys) -> None:
    assert app(["version"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["version"] == __version__
    assert "lcc" in payload["schemes"]


def test_missing_command_is_a_usage_error() -> None:
    with pytest.raises(SystemExit) as exc_info:
        app([])
    assert exc_info.value.code == 2


def test_run_output_is_identical_across_reruns(capsys, tmp_path) -> None:
    path = _write(tmp_path, DEPENDENT_TRIPLE)
    assert app(["run", "--scenario", path, "--seed", "2"]) == EXIT_OK
    first = capsys.readouterr().out
    assert app(["run", "--scenario", path, "--seed", "2"]) == EXIT_OK
    assert capsys.readouterr().out == first
    assert "wall_time" not in first
