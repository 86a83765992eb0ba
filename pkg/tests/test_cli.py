"""Command-line interface: exit codes, config precedence, report formats,
and atomic output."""

import json
import subprocess
import sys

import pytest

from bernint.cli import main


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


def run_json(argv, capsys):
    rc, out = run(argv + ["--format", "json"], capsys)
    return rc, json.loads(out)


# ---------------------------------------------------------------------------
# exit codes


def test_list_fns_ok(capsys):
    rc, doc = run_json(["list-fns"], capsys)
    assert rc == 0
    names = [row["name"] for row in doc["functions"]]
    assert "monomial(2)" in names and "abs_shift" in names


def test_unknown_function_exits_2(capsys):
    rc, _ = run(["coeffs", "--fn", "nope", "--n", "4"], capsys)
    assert rc == 2


def test_missing_required_field_exits_2(capsys):
    rc, _ = run(["coeffs", "--fn", "monomial(2)"], capsys)  # no --n
    assert rc == 2


def test_capability_error_exits_2(capsys):
    rc, _ = run(
        ["error", "--fn", "abs_shift", "--s", "1", "--n-min", "4", "--n-max", "8"], capsys
    )
    assert rc == 2


def test_malformed_x_exits_2(capsys):
    rc, _ = run(["eval", "--fn", "monomial(2)", "--n", "4", "--x", "1/0"], capsys)
    assert rc == 2


def test_unknown_command_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_verify_failure_is_reported_but_exit_0_without_strict(capsys):
    rc, doc = run_json(
        ["verify", "--fn", "monomial(3)", "--s", "2", "--n-min", "2", "--n-max", "8"],
        capsys,
    )
    assert rc == 0
    assert doc["passed"] is False
    assert {"check": "f''(1)", "value": "6", "ok": False} in doc["vanishing"]


def test_verify_failure_exits_1_with_strict(capsys):
    rc, _ = run(
        ["verify", "--fn", "monomial(3)", "--s", "2", "--n-min", "2", "--n-max", "8", "--strict"],
        capsys,
    )
    assert rc == 1


def test_verify_pass_exits_0_with_strict(capsys):
    rc, doc = run_json(
        ["verify", "--fn", "monomial(2)", "--s", "1", "--n-min", "1", "--n-max", "16", "--strict"],
        capsys,
    )
    assert rc == 0
    assert doc["passed"] is True and doc["n0"] == 1


# ---------------------------------------------------------------------------
# frozen outputs


def test_coeffs_frozen_rows(capsys):
    rc, doc = run_json(
        ["coeffs", "--fn", "monomial(2)", "--kind", "nearest", "--tie", "half_up", "--n", "2"],
        capsys,
    )
    assert rc == 0
    mid = doc["rows"][1]
    assert mid["raw"] == "1/2" and mid["rounded"] == "1" and mid["coeff"] == "1/2"


def test_eval_exact_rationals(capsys):
    rc, doc = run_json(
        ["eval", "--fn", "monomial(2)", "--kind", "floor", "--n", "2", "--x", "1/2,3/4"],
        capsys,
    )
    assert rc == 0
    assert doc["rows"][0] == {"x": "1/2", "exact": "1/4", "value": 0.25}
    assert doc["rows"][1]["exact"] == "9/16"


def test_rate_fit_values(capsys):
    rc, doc = run_json(
        ["rate", "--fn", "monomial(2)", "--n-min", "16", "--n-max", "128"], capsys
    )
    assert rc == 0
    assert abs(doc["fit"]["alpha"] - 1.0) < 1e-6
    assert abs(doc["fit"]["C"] - 0.25) < 1e-6


def test_rate_insufficient_data_is_annotated_not_fatal(capsys):
    rc, doc = run_json(
        ["rate", "--fn", "monomial(2)", "--n-min", "16", "--n-max", "64"], capsys
    )
    assert rc == 0
    assert doc["fit"] is None and "note" in doc


def test_coeffs_floor_drops_half(capsys):
    rc, doc = run_json(
        ["coeffs", "--fn", "monomial(2)", "--kind", "floor", "--n", "2"], capsys
    )
    assert rc == 0
    assert [r["raw"] for r in doc["rows"]] == ["0", "1/2", "1"]
    assert [r["rounded"] for r in doc["rows"]] == ["0", "0", "1"]


def test_error_sweep_rows(capsys):
    rc, doc = run_json(
        ["error", "--fn", "monomial(2)", "--n-min", "16", "--n-max", "64"], capsys
    )
    assert rc == 0
    errs = [row["error"] for row in doc["rows"]]
    assert errs == sorted(errs, reverse=True)
    assert abs(errs[0] - 1.0 / 64) < 1e-12  # exact law 1/(4n)


def test_voronovskaya_exact_strings(capsys):
    rc, doc = run_json(
        ["voronovskaya", "--fn", "monomial(3)", "--n-min", "8", "--n-max", "32"], capsys
    )
    assert rc == 0
    assert doc["limit"] == "3/8" and doc["x"] == "1/2"
    assert all(row["scaled_gap"] == "3/8" and row["residual"] == "0" for row in doc["rows"])


def test_converse_reports_slopes(capsys):
    rc, doc = run_json(
        ["converse", "--fn", "monomial(2)", "--kind", "nearest", "--s", "1",
         "--n-min", "16", "--n-max", "128"],
        capsys,
    )
    assert rc == 0
    assert doc["omega_phi2_exact_zero"] is True  # (x^2)' is linear
    assert abs(doc["slope_omega1"] - 1.0) < 0.05
    assert 0.9 < doc["alpha"] < 1.05


def test_saturation_trivial_json(capsys):
    rc, doc = run_json(
        ["saturation", "--fn", "integer_linear(3,2)", "--kind", "floor",
         "--n-min", "16", "--n-max", "64"],
        capsys,
    )
    assert rc == 0
    assert doc["verdict"] == "TrivialClass"
    assert all(row["n_error"] == 0.0 for row in doc["rows"])


def test_modulus_csv_shape(capsys):
    rc, out = run(
        ["modulus", "--fn", "monomial(2)", "--t", "0.1,0.2", "--format", "csv"], capsys
    )
    assert rc == 0
    lines = out.splitlines()
    comments = [l for l in lines if l.startswith("#")]
    data = [l for l in lines if not l.startswith("#")]
    assert any(l.startswith("# fn=monomial(2)") for l in comments)
    assert data[0] == "t,omega1,omega_phi2"
    assert len(data) == 3
    t, w1, w2 = data[1].split(",")
    assert float(t) == 0.1 and 0.0 < float(w2) <= 0.005


# ---------------------------------------------------------------------------
# config file and precedence


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"fn": "monomial(2)", "kind": "floor", "n": 8}))
    rc, doc = run_json(["coeffs", "--config", str(cfg)], capsys)
    assert rc == 0
    assert doc["config"]["n"] == 8 and doc["config"]["kind"] == "floor"


def test_cli_overrides_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"fn": "monomial(2)", "n": 8}))
    rc, doc = run_json(["coeffs", "--config", str(cfg), "--n", "4"], capsys)
    assert rc == 0
    assert doc["config"]["n"] == 4
    assert doc["n"] == 4


def test_unknown_config_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"fn": "monomial(2)", "nn": 1}))
    rc, out = run(["coeffs", "--config", str(cfg), "--n", "4"], capsys)
    assert rc == 2


def test_bad_config_value_names_the_field(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"fn": "monomial(2)", "n": "eight"}))
    rc = main(["coeffs", "--config", str(cfg)])
    assert rc == 2


# ---------------------------------------------------------------------------
# output files


def test_out_writes_file_atomically(tmp_path, capsys):
    out = tmp_path / "report.json"
    out.write_text("stale")
    rc = main(
        ["eval", "--fn", "monomial(2)", "--n", "4", "--x", "1/2", "--out", str(out)]
    )
    assert rc == 0
    doc = json.loads(out.read_text())
    # classic model: B_4(x^2) = x^2 + x(1-x)/4, so 1/4 + 1/16 at the midpoint
    assert doc["rows"][0]["exact"] == "5/16"
    leftovers = [p for p in tmp_path.iterdir() if p.name != "report.json"]
    assert leftovers == []


def test_two_runs_are_byte_identical(tmp_path):
    """Same config -> byte-identical report, including through a subprocess."""
    args = [
        "modulus", "--fn", "monomial(2)", "--t", "0.05,0.1,0.2",
        "--format", "csv",
    ]
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.csv"
        cmd = [sys.executable, "-m", "bernint.cli"] + args + ["--out", str(path)]
        res = subprocess.run(cmd, capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
