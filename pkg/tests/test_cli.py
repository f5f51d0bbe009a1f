"""Command-line interface: exit codes, report shape, determinism."""
import json
import subprocess
import sys

import pytest

from cslgeo.cli import main

TOP_KEYS = {"family", "params", "n", "config", "checks", "thresholds",
            "oracle_diff", "summary", "passed"}


def run_cli(*argv):
    """In-process invocation; returns (exit_code, stdout, stderr)."""
    import io
    from contextlib import redirect_stderr, redirect_stdout
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


# ----------------------------------------------------------------- thresholds

def test_thresholds_table_n3():
    code, out, _ = run_cli("thresholds", "--n", "3")
    assert code == 0
    assert out == (
        "threshold    value\n"
        "-----------  -----\n"
        "basic        3.33333333\n"
        "main         2.66666667\n"
        "main1        2.66666667\n"
        "main3        2.66666667\n"
        "tg           2\n"
        "simons(p=n)  1.8\n"
        "lili         2\n"
    )


def test_thresholds_surface_marks_na():
    code, out, _ = run_cli("thresholds", "--n", "2", "--hsq", "1.5")
    assert code == 0
    assert "basic        3.5" in out
    assert out.count("n/a") == 4


def test_thresholds_crossover_dimension():
    code, out, _ = run_cli("thresholds", "--n", "17", "--hsq", "2.0")
    assert code == 0
    assert "main1        12\n" in out
    assert "main3        12\n" in out


def test_thresholds_requires_valid_n():
    code, _, err = run_cli("thresholds")
    assert code == 2
    assert "error:" in err
    code, _, err = run_cli("thresholds", "--n", "3", "--hsq", "-1")
    assert code == 2


# --------------------------------------------------------------------- verify

def test_verify_torus_report_shape():
    code, out, _ = run_cli("verify", "--family", "calabi-torus",
                           "--params", "r1=0.6,r2=0.8,r3=0.6,r4=0.8",
                           "--grid", "4")
    assert code == 0
    report = json.loads(out)
    assert set(report) == TOP_KEYS
    assert report["family"] == "calabi_torus"
    assert report["n"] == 2
    assert report["passed"] is True
    names = [c["name"] for c in report["checks"]]
    assert names == ["legendrian", "codazzi", "reeb_component", "simons_parallel",
                     "pythagorean", "bochner", "gauss_flat_defect", "b2_relation",
                     "oracle_sigma", "oracle_H_frame", "oracle_normB2",
                     "oracle_normH2", "csl", "dmu"]
    assert all(c["passed"] for c in report["checks"])
    assert report["summary"]["equality_basic"] is True
    assert report["summary"]["kappa_max_abs"] <= 1e-9
    assert report["summary"]["normB2"] == pytest.approx(
        report["summary"]["normH2"] + 2.0, abs=1e-8)


def test_verify_is_byte_deterministic(tmp_path):
    argv = ("verify", "--family", "calabi_product", "--n", "3",
            "--params", "r1=0.8,r2=0.6", "--grid", "3", "--seed", "5")
    _, out1, _ = run_cli(*argv)
    _, out2, _ = run_cli(*argv)
    assert out1 == out2
    path = tmp_path / "report.json"
    code, out3, _ = run_cli(*argv, "--out", str(path))
    assert code == 0 and out3 == ""
    assert path.read_text() == out1


def test_verify_product_margins():
    code, out, _ = run_cli("verify", "--family", "calabi_product", "--n", "3",
                           "--params", "r1=0.8,r2=0.6", "--grid", "3")
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["margin_basic"] == pytest.approx(0.0, abs=1e-7)
    assert report["summary"]["margin_main"] == pytest.approx(-32 / 81, abs=1e-7)
    assert report["summary"]["equality_basic"] is True
    by_name = {t["name"]: t for t in report["thresholds"]}
    assert by_name["basic"]["hypothesis_holds"] is True
    assert by_name["main"]["hypothesis_holds"] is False


def test_verify_clifford_beyond_oracle():
    code, out, _ = run_cli("verify", "--family", "clifford-torus", "--n", "3",
                           "--grid", "3")
    assert code == 0
    report = json.loads(out)
    assert report["oracle_diff"] is None
    names = [c["name"] for c in report["checks"]]
    assert "oracle_sigma" not in names
    assert report["summary"]["minimal"] is True


def test_verify_fails_with_impossible_tolerance():
    code, out, err = run_cli("verify", "--family", "calabi-torus",
                             "--params", "r1=0.6,r2=0.8,r3=0.6,r4=0.8",
                             "--grid", "3", "--tol-ad", "1e-30")
    assert code == 1
    assert "FAILED checks:" in err
    report = json.loads(out)
    assert report["passed"] is False


def test_verify_invalid_params_exit_2():
    code, _, err = run_cli("verify", "--family", "calabi-torus",
                           "--params", "r1=0.6,r2=0.7,r3=0.6,r4=0.8")
    assert code == 2
    assert "r1^2 + r2^2 = 1 violated" in err
    code, _, err = run_cli("verify", "--family", "nonsense")
    assert code == 2
    code, _, err = run_cli("verify", "--family", "calabi_product", "--n", "3",
                           "--params", "r1=0.8,r2")
    assert code == 2


def test_verify_requires_n_when_not_forced():
    code, _, err = run_cli("verify", "--family", "calabi_product",
                           "--params", "r1=0.8,r2=0.6")
    assert code == 2
    assert "--n is required" in err


# ----------------------------------------------------------------------- scan

def test_scan_product_csv():
    code, out, _ = run_cli("scan", "--family", "calabi_product", "--n", "3",
                           "--sweep", "r1=0.5:0.95:10")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == ("param,normB2,normH2,threshold_basic,margin_basic,"
                        "threshold_main,margin_main,equality_flag")
    assert len(lines) == 11
    rows = [line.split(",") for line in lines[1:]]
    flags = [int(r[-1]) for r in rows]
    crit = (3 / 4) ** 0.5  # equality holds up to r1 = sqrt(n/(n+1))
    for r, flag in zip(rows, flags):
        assert flag == (1 if float(r[0]) <= crit + 1e-9 else 0)
    assert flags[0] == 1 and flags[-1] == 0


def test_scan_torus_kappa_column():
    code, out, _ = run_cli("scan", "--family", "calabi-torus",
                           "--params", "r3=0.6,r4=0.8", "--sweep", "r1=0.3:0.9:5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].endswith(",equality_flag,kappa")
    for line in lines[1:]:
        cells = line.split(",")
        assert abs(float(cells[-1])) < 1e-9   # flat family
        assert cells[-2] == "1"               # always on the basic threshold


def test_scan_rejects_bad_sweeps():
    assert run_cli("scan", "--family", "calabi_product", "--n", "3",
                   "--sweep", "r1=0.5:0.9:1")[0] == 2
    assert run_cli("scan", "--family", "calabi_product", "--n", "3",
                   "--sweep", "r1=0.9:0.5:10")[0] == 2
    assert run_cli("scan", "--family", "calabi_product", "--n", "3",
                   "--sweep", "bogus=0.1:0.9:5")[0] == 2
    assert run_cli("scan", "--family", "calabi_product", "--n", "3")[0] == 2


# --------------------------------------------------------------- config files

def test_config_file_supplies_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# sample run\n"
        "family = calabi-torus\n"
        "params = r1=0.6,r2=0.8,r3=0.6,r4=0.8\n"
        "grid = 3\n"
    )
    code, out, _ = run_cli("verify", "--config", str(cfg))
    assert code == 0
    report = json.loads(out)
    assert report["family"] == "calabi_torus"
    assert report["config"]["grid"] == 3


def test_flag_overrides_config_value(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("family = calabi-torus\n"
                   "params = r1=0.6,r2=0.8,r3=0.6,r4=0.8\n"
                   "grid = 3\n"
                   "seed = 9\n")
    code, out, _ = run_cli("verify", "--config", str(cfg), "--grid", "4")
    assert code == 0
    report = json.loads(out)
    assert report["config"]["grid"] == 4
    assert report["config"]["seed"] == 9


def test_config_unknown_key_rejected(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("family = calabi-torus\nwibble = 3\n")
    code, _, err = run_cli("verify", "--config", str(cfg))
    assert code == 2
    assert "unknown config key" in err


def test_config_missing_file_exit_2(tmp_path):
    code, _, err = run_cli("verify", "--config", str(tmp_path / "absent.cfg"))
    assert code == 2


# ------------------------------------------------------- subprocess smoke run

def test_module_entry_point_subprocess():
    """One true end-to-end run through the interpreter boundary."""
    proc = subprocess.run(
        [sys.executable, "-m", "cslgeo.cli", "verify", "--family",
         "calabi-torus", "--params", "r1=0.6,r2=0.8,r3=0.6,r4=0.8",
         "--grid", "3"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["passed"] is True
    assert proc.stdout.endswith("\n")
