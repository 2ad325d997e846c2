"""Drives the command-line tool end to end through a temp directory."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("KCSAT_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="KCSAT_CLI not set")


def run_cli(*args, expect_failure=False):
    result = subprocess.run(
        [CLI, *map(str, args)], capture_output=True, text=True, timeout=120
    )
    if expect_failure:
        assert result.returncode != 0, result.stdout + result.stderr
    else:
        assert result.returncode == 0, result.stdout + result.stderr
    return result


def test_generate_encode_solve_pipeline(tmp_path):
    instance = tmp_path / "chain.json"
    cnf = tmp_path / "chain.cnf"

    generated = run_cli("generate", "--w", 1, "--d", 2, "--out", instance)
    assert "variables=3" in generated.stdout
    doc = json.loads(instance.read_text())
    assert doc["variables"] == ["x1", "x2", "x3"]

    encoded = run_cli("encode", "--instance", instance, "--encoding", "direct",
                      "--out", cnf)
    assert "vars=6 clauses=12" in encoded.stdout
    assert cnf.read_text().startswith("c map 1 x1 0")

    solved = run_cli("solve", "--cnf", cnf, "--scheme", "1uip", "--restart", "every")
    assert solved.stdout.splitlines()[0] == "UNSAT"
    assert "decisions=" in solved.stdout

    refuted = run_cli("nhr", "--cnf", cnf, "--width", 1, "--trace")
    assert "REFUTED width=1" in refuted.stdout
    assert "STEP 0:" in refuted.stdout

    closure = run_cli("closure", "--instance", instance, "--k", 1)
    assert closure.stdout.splitlines()[0] == "EMPTY"
    assert "surviving=0" in closure.stdout


def test_solver_stats_json_and_model(tmp_path):
    cnf = tmp_path / "sat.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 -2 0\n")

    report = run_cli("solve", "--cnf", cnf, "--stats-json")
    doc = json.loads(report.stdout)
    assert doc["sat"] is True
    assert sorted(abs(lit) for lit in doc["model"]) == [1, 2]

    plain = run_cli("solve", "--cnf", cnf, "--seed", 5)
    assert plain.stdout.splitlines()[0] == "SAT"
    assert plain.stdout.splitlines()[-1].startswith("v ")


def test_bounds_and_absorb(tmp_path):
    bounds = run_cli("bounds", "--n", 4, "--d", 2, "--k", 2, "--m", 5)
    assert "restarts_any_asserting=480" in bounds.stdout
    assert "restarts_decision_scheme=30" in bounds.stdout
    assert "restarts_decision_median=48" in bounds.stdout
    assert "csp_restart_bound=896" in bounds.stdout

    cnf = tmp_path / "db.cnf"
    cnf.write_text("p cnf 2 2\n1 0\n-1 2 0\n")
    absorbed = run_cli("absorb", "--cnf", cnf, "--clause", "1 2")
    assert absorbed.stdout.strip().splitlines()[-1] == "ABSORBED"

    stuck = tmp_path / "wide.cnf"
    stuck.write_text("p cnf 3 1\n1 2 3 0\n")
    not_absorbed = run_cli("absorb", "--cnf", stuck, "--clause", "1 2")
    assert not_absorbed.stdout.strip().splitlines()[-1] == "NOT-ABSORBED"


def test_bench_writes_stable_csv_and_plotdata(tmp_path):
    csv_path = tmp_path / "rows.csv"
    plot_path = tmp_path / "series.dat"
    result = run_cli(
        "bench", "--w", 1, "--d", 2, 3, "--encoding", "direct", "--scheme", "1uip",
        "--restart", "every", "--seeds", 3, "--no-times",
        "--csv", csv_path, "--plotdata", plot_path,
    )
    assert "w=1 d=2" in result.stdout
    assert "w=1 d=3" in result.stdout

    lines = csv_path.read_text().splitlines()
    assert lines[0] == "w,d,n,clauses,scheme,seed,verdict,restarts,conflicts,decisions,error"
    assert len(lines) == 7  # header + 2 configurations x 3 seeds
    assert all(line.split(",")[6] == "UNSAT" for line in lines[1:])

    plot = plot_path.read_text()
    assert "# w=1 scheme=1uip" in plot
    assert "reference" in plot


def test_bad_inputs_fail_loudly(tmp_path):
    missing = run_cli("closure", "--instance", tmp_path / "nope.json", "--k", 1,
                      expect_failure=True)
    assert "error:" in missing.stderr

    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n2 0\n")
    out_of_range = run_cli("solve", "--cnf", bad, expect_failure=True)
    assert "error:" in out_of_range.stderr
