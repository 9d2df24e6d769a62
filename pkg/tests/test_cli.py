import csv
import io
import json
import subprocess
import sys

import pytest

from jointloc.cli import CSV_COLUMNS, fmt_float, main

HEADER = "check,eps1,eps2,lhs,rhs,margin,pass,witness,seed"

QUBIT_CFG = {
    "dimension": 2,
    "pvm_a": {"basis": "computational"},
    "pvm_b": {"basis": "hadamard"},
    "joint_povm": {"family": "trivial"},
    "states": [{"ket": [1, 0]}],
    "epsilons": [[0.1, 0.1], [0.2, 0.2]],
    "seed": 3,
}


@pytest.fixture
def cfg_path(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(QUBIT_CFG))
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_csv_header_is_exact():
    assert ",".join(CSV_COLUMNS) == HEADER


def test_fmt_float_17_digits():
    assert fmt_float(1 + 2**-0.5) == "1.7071067811865475"
    assert fmt_float(0.1) == "0.10000000000000001"


def test_example_qubit_csv(tmp_path):
    out = tmp_path / "qubit.csv"
    assert main(["example", "qubit", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[0] == HEADER
    rows = list(csv.DictReader(io.StringIO(text)))
    bounds = {r["lhs"] for r in rows if r["check"] in ("qubit_localization_sweep", "qubit_localization_bloch", "qubit_measurement_sum")}
    assert bounds == {"1.7071067811865475"}
    assert all(r["pass"] == "true" for r in rows)


def test_example_c3_json(capsys):
    code, out, _ = run(capsys, "example", "c3")
    doc = json.loads(out)
    assert code == 0 and doc["all_passed"] and doc["summary"]["c3"]["block_overlap_max"] == 0.5


@pytest.mark.parametrize("args", [["example", "torus", "--n", "3"], ["example", "nqubit", "--n", "2"]])
def test_example_small_scenarios(capsys, args):
    code, out, _ = run(capsys, *args, "--format", "csv")
    assert code == 0 and out.startswith(HEADER)


def test_nqubit_limit_needs_flag(capsys):
    from jointloc.errors import DimensionTooLarge

    with pytest.raises(DimensionTooLarge):
        main(["example", "nqubit", "--n", "4"])


def test_width_point_mass(capsys, cfg_path):
    code, out, _ = run(capsys, "width", "--config", cfg_path, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    z_rows = [r for r in rows if r["observable"] == "pvm_a"]
    assert z_rows and all(float(r["width"]) == 0.0 for r in z_rows)
    x_rows = [r for r in rows if r["observable"] == "pvm_b" and float(r["eps"]) < 0.5]
    assert all(float(r["width"]) == 2.0 for r in x_rows)


def test_errorbar_and_distance(capsys, cfg_path):
    code, out, _ = run(capsys, "errorbar", "--config", cfg_path)
    rows = json.loads(out)["rows"]
    assert code == 0
    assert {(r["marginal"], r["width"]) for r in rows} == {("M1|A", 0.0), ("M2|B", 2.0)}
    code, out, _ = run(capsys, "distance", "--config", cfg_path)
    vals = {(r["marginal"], r["metric"]): r["value"] for r in json.loads(out)["rows"]}
    assert vals[("M2|B", "werner")] == pytest.approx(0.5)
    assert vals[("M2|B", "linf")] == pytest.approx(0.5)
    assert vals[("M1|A", "linf")] == pytest.approx(0.0, abs=1e-15)


def test_validate(capsys, cfg_path):
    code, out, _ = run(capsys, "validate", "--config", cfg_path, "--format", "csv")
    assert code == 0 and "joint_povm" in out


def test_verify_config_instance(capsys, cfg_path):
    code, out, _ = run(capsys, "verify", "--config", cfg_path, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert {r["seed"] for r in rows} == {"3"}
    assert {"theorem1_a", "theorem1_b", "key_inequality", "theorem4", "corollary", "miyah"} <= {r["check"] for r in rows}


def test_verify_suite_round_trip(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["verify", "--seed", "42", "--dims", "2,3", "--instances", "3", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["all_passed"] and doc["n_reports"] == len(doc["reports"]) > 0


def test_sweep_comparison(capsys):
    code, out, _ = run(capsys, "sweep", "--points", "9")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["comparison"]) == 9
    assert {"corollary", "miyah"} <= {row["tighter"] for row in doc["comparison"]}


def test_config_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dimension": 2,\n "seed": }')
    code, _, err = run(capsys, "verify", "--config", bad)
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "width", "--config", tmp_path / "missing.json")
    assert code == 2
    code, _, err = run(capsys, "errorbar", "--config", bad.with_name("x.json"))
    assert code == 2


def test_missing_fields(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"dimension": 2}))
    code, _, err = run(capsys, "errorbar", "--config", p)
    assert code == 2 and "pvm_a" in err
    code, _, err = run(capsys, "width")
    assert code == 2


def test_failed_check_exit_code(capsys, tmp_path):
    # an absurd negative tolerance turns every tight check into a failure
    code, out, _ = run(capsys, "example", "c3", "--tolerance", "-1", "--format", "csv")
    assert code == 1 and ",false," in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "jointloc", "example", "c3", "--format", "csv"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith(HEADER)


def test_error_rows_in_csv():
    from jointloc.cli import reports_to_csv
    from jointloc.verification import error_report, make_report

    text = reports_to_csv([error_report("theorem1", RuntimeError("x"), eps1=0.1, eps2=0.0), make_report("miyah", 1.0, 0.5)], 7)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["pass"] for r in rows] == ["ERROR", "true"]
    assert rows[0]["lhs"] == "nan" and rows[0]["eps1"] == "0.10000000000000001"
