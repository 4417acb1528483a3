"""CLI contract: exit codes, formats, determinism, worker-pool env var."""

import csv
import io
import json

import pytest

from radial_theorems import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_kramers_modified_all_pass(capsys):
    code, out = run(
        ["kramers", "--potential", "coulomb", "--n", "1..3", "--s=0..2", "--format", "json"],
        capsys,
    )
    assert code == 0
    data = json.loads(out)
    assert data and all(row["pass"] for row in data)
    row = data[0]
    assert set(row) >= {"rule", "case", "lhs_terms", "rhs_boundary", "residual",
                        "scale", "tolerance", "pass", "delta_triggered"}
    assert set(row["case"]) >= {"potential", "n_r", "l", "s_or_f", "mode"}


def test_classic_rows_fail_exactly_at_the_delta(capsys):
    code, out = run(
        ["kramers", "--n", "1..4", "--s=-7..4", "--mode", "both", "--format", "json"],
        capsys,
    )
    assert code == 1  # mixed pass/fail, all rows still emitted
    data = json.loads(out)
    classic = [r for r in data if r["case"]["mode"] == "classic"]
    assert classic
    for row in classic:
        at_delta = row["case"]["s_or_f"] == -(2 * row["case"]["l"] + 1)
        assert row["pass"] == (not at_delta)


def test_json_round_trip_is_bit_exact(capsys):
    _, out = run(["kramers", "--n", "1..2", "--s=-1..2", "--format", "json"], capsys)
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data


def test_csv_emission(capsys):
    code, out = run(["ehrenfest", "--n", "1..2", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "rule"
    assert len(rows) > 1


def test_table_marks_status(capsys):
    code, out = run(["contact", "--n", "1..3", "--l", "0"], capsys)
    assert code == 0
    assert "ok" in out


def test_solve_kratzer_energy_in_output(capsys, tmp_path):
    dump = tmp_path / "state.txt"
    code, out = run(
        ["solve", "--potential", "kratzer", "--e2", "1", "--v0", "1",
         "--l", "1", "--nodes", "0", "--dump", str(dump), "--format", "json"],
        capsys,
    )
    assert code == 0
    data = json.loads(out)
    assert data[0]["info"]["energy"] == pytest.approx(-0.5, rel=1e-8)
    header = dump.read_text().splitlines()[0]
    assert "-0.5" in header or "-0.4999" in header


def test_timederiv_subcommand(capsys):
    code, out = run(["timederiv", "--pair", "1,2", "--op", "pr", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data[0]["pass"] is True
    assert len(data[0]["times"]) == 16


def test_bad_range_is_config_error(capsys):
    code, _ = run(["kramers", "--n", "bogus"], capsys)
    assert code == 2


def test_bad_potential_is_config_error(capsys):
    code, _ = run(["kramers", "--potential", "nonsense"], capsys)
    assert code == 2


def test_empty_report_list_is_valid_json(capsys):
    from radial_theorems.reports import emit_report

    assert json.loads(emit_report([], "json")) == []


def test_thread_env_var_and_determinism(capsys, monkeypatch):
    monkeypatch.setenv("RADIAL_THEOREMS_THREADS", "2")
    _, out1 = run(["kramers", "--n", "1..3", "--s=-1..3", "--format", "json"], capsys)
    monkeypatch.setenv("RADIAL_THEOREMS_THREADS", "1")
    _, out2 = run(["kramers", "--n", "1..3", "--s=-1..3", "--format", "json"], capsys)
    assert out1 == out2


def test_output_file_flag(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _ = run(
        ["kramers", "--n", "1..1", "--s=0..1", "--format", "json", "--output", str(path)],
        capsys,
    )
    assert code == 0
    assert json.loads(path.read_text())
