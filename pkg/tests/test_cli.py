"""Command-line interface: schemas, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

from pvilab.cli import main, parse_complex, parse_theta, rep_from_json

THETA = "0.23,0.57,0.31,0.44"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex_notations():
    assert parse_complex("0.3+0.2i") == 0.3 + 0.2j
    assert parse_complex("1e-3") == 1e-3
    assert parse_complex(" -2j ") == -2j


def test_parse_theta_validates_arity():
    with pytest.raises(ValueError):
        parse_theta("1,2,3")


def test_series_output_schema(capsys):
    code, out, _ = run_cli(capsys, "series", "--theta", THETA,
                           "--class", "form1", "--order", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert len(doc["coeffs"]) == 7
    assert doc["residual_first_nonzero_order"] is None


def test_output_bytes_are_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "monodromy", "--case", "a", "--theta", THETA)
    _, out2, _ = run_cli(capsys, "monodromy", "--case", "a", "--theta", THETA)
    assert out1 == out2
    assert out1.endswith("\n")


def test_monodromy_json_round_trips_through_identity_check(capsys, tmp_path):
    p = tmp_path / "rep.json"
    code, _, _ = run_cli(capsys, "monodromy", "--case", "b", "--thx", "0.31",
                         "--thinf", "0.44", "--s", "0.27", "--r", "1.0",
                         "--out", str(p))
    assert code == 0
    rep = rep_from_json(json.loads(p.read_text()))
    assert rep.case == "b"
    code, out, _ = run_cli(capsys, "identity-check", "--json-in", str(p))
    assert code == 0
    assert json.loads(out)["abs_residual"] < 1e-10


def test_invert_s_from_file(capsys, tmp_path):
    p = tmp_path / "rep.json"
    run_cli(capsys, "monodromy", "--case", "b", "--thx", "0.31",
            "--thinf", "0.44", "--s", "0.27", "--r", "1.0", "--out", str(p))
    code, out, _ = run_cli(capsys, "invert", "--what", "s-b", "--json-in", str(p))
    assert code == 0
    re, im = json.loads(out)["value"]
    assert abs(complex(re, im) - 0.27) < 1e-10


def test_validation_errors_exit_2(capsys):
    code, _, err = run_cli(capsys, "series", "--theta", "0.23,0.57,0.31,1",
                           "--class", "form1")
    assert code == 2
    assert "error" in err
    code, _, _ = run_cli(capsys, "series", "--theta", "1,2", "--class", "form1")
    assert code == 2


def test_numeric_failure_exits_3(capsys):
    code, _, err = run_cli(capsys, "continue", "--theta", "1,0.6,0,-1.6",
                           "--ic", "0.3,0.15789473684,0.44321329639",
                           "--path", "0.3;0.6",
                           "--switch-threshold", "0.5", "--hysteresis", "0.5",
                           "--max-switches", "2")
    assert code == 3
    assert "ChartThrashError" in err


def test_continue_csv_and_summary(capsys, tmp_path):
    csv = tmp_path / "traj.csv"
    code, out, _ = run_cli(capsys, "continue", "--theta", "0.21,0.33,0.17,0.52",
                           "--ic", "0.01,1.35258971,-0.15817967",
                           "--path", "0.01;0.1", "--csv-out", str(csv))
    assert code == 0
    doc = json.loads(out)
    assert doc["n_samples"] >= 2
    assert csv.read_text().startswith("x_re,x_im,")


def test_symmetry_rejects_xy_for_parameter_only_generators(capsys):
    code, _, _ = run_cli(capsys, "symmetry", "--gen", "w2", "--theta", THETA,
                         "--xy", "0.3,0.5")
    assert code == 2


def test_hypergeom_oracle_deviation(capsys):
    code, out, _ = run_cli(capsys, "hypergeom", "--which", "C01c",
                           "--theta", THETA, "--oracle")
    assert code == 0
    assert json.loads(out)["deviation"] < 1e-8


def test_sweep_is_seeded_and_sorted(capsys, monkeypatch):
    monkeypatch.setenv("PVI_LAB_THREADS", "2")
    _, out1, _ = run_cli(capsys, "sweep", "--count", "4", "--order", "4",
                         "--seed", "11")
    _, out2, _ = run_cli(capsys, "sweep", "--count", "4", "--order", "4",
                         "--seed", "11")
    assert out1 == out2
    doc = json.loads(out1)
    assert [r["index"] for r in doc["results"]] == [0, 1, 2, 3]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pvilab.cli", "symmetry", "--gen", "x1",
         "--theta", THETA],
        capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["theta_image"][0] == [0.31, 0.0]
