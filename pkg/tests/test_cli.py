import json
import subprocess
import sys

import pytest

from bkdiamond.cli import UsageError, main, parse_ks, parse_range, read_config


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


# -- argument helpers ----------------------------------------------------------


def test_parse_range():
    assert parse_range("5") == range(5, 6)
    assert parse_range("2..13") == range(2, 14)
    for bad in ("x", "5..2", "1..", ""):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_parse_ks():
    assert parse_ks("1,2") == [1, 2]
    assert parse_ks("1..3") == [1, 2, 3]
    with pytest.raises(UsageError):
        parse_ks("0")


def test_read_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# scan setup\nk = 2\nhorizon=300  # short\n\nprec-cap = 256\n")
    assert read_config(str(cfg)) == {"k": "2", "horizon": "300", "prec_cap": "256"}
    cfg.write_text("no equals sign\n")
    with pytest.raises(UsageError):
        read_config(str(cfg))


# -- coeffs --------------------------------------------------------------------------


def test_coeffs_k1(capsys):
    code, out, _ = run(["coeffs", "--k", "1", "--n", "5"], capsys)
    assert code == 0
    assert json.loads(out)["coefficients"] == ["1", "3", "8", "18", "38", "75"]


def test_coeffs_k2_zero(capsys):
    code, out, _ = run(["coeffs", "--k", "2", "--n", "0", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines() == ["n,coefficient", "0,1"]


@pytest.mark.parametrize("argv", [["coeffs", "--k", "0", "--n", "5"], ["coeffs", "--k", "1", "--n", "-1"],
                                  ["coeffs", "--k", "1"], ["coeffs", "--k", "1", "--n", "5", "--format", "xml"],
                                  ["frobnicate"], ["coeffs", "--k", "1", "--n", "5", "--prec-cap", "32"]])
def test_usage_errors(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 2 and out == ""


def test_coeffs_table(capsys):
    code, out, _ = run(["coeffs", "--k", "1", "--n", "2", "--format", "table"], capsys)
    assert code == 0 and out.split() == ["n", "coefficient", "0", "1", "1", "3", "2", "8"]


# -- verify ----------------------------------------------------------------------


def test_verify_k1_prefix(capsys):
    code, out, _ = run(["verify", "--k", "1", "--from", "1", "--to", "200"], capsys)
    assert code == 0
    rows = json_lines(out)
    assert [r["n"] for r in rows] == list(range(1, 201))
    assert all(r["verdict"] == "match" and r["rounded"] == r["exact"] for r in rows)
    assert set(rows[0]) >= {"exact", "mid_M", "error_bound", "J", "prec", "enclosure"}


def test_verify_k2_single(capsys):
    code, out, _ = run(["verify", "--k", "2", "--from", "1", "--to", "1"], capsys)
    assert code == 0 and json_lines(out)[0]["exact"] == "3"


def test_verify_k3_witness(capsys):
    code, out, err = run(["verify", "--k", "3", "--from", "1", "--to", "10"], capsys)
    assert code == 2 and out == ""
    assert "j=1" in err


def test_verify_undecided_at_low_cap(capsys):
    code, out, _ = run(["verify", "--k", "1", "--from", "3000", "--to", "3000", "--prec-cap", "64"], capsys)
    assert code == 3
    assert json_lines(out)[0]["verdict"] == "undecided"


# -- scan ----------------------------------------------------------------------------


def test_scan_k2_d5(capsys):
    code, out, _ = run(["scan", "--k", "2", "--d", "5", "--horizon", "2000"], capsys)
    assert code == 0 and json_lines(out)[0]["N"] == 34


def test_scan_d2_short_horizon(capsys):
    code, out, _ = run(["scan", "--k", "1", "--d", "2", "--horizon", "100"], capsys)
    assert code == 0 and json_lines(out)[0]["N"] == 0


def test_scan_csv_row(capsys):
    code, out, _ = run(["scan", "--k", "1", "--d", "2..5", "--horizon", "300", "--format", "csv"], capsys)
    assert code == 0 and out.splitlines() == ["k,d=2,d=3,d=4,d=5", "1,0,4,17,41"]


@pytest.mark.parametrize("d", ["7..3", "a..b", "0"])
def test_scan_bad_range(d, capsys):
    assert run(["scan", "--k", "1", "--d", d], capsys)[0] == 2


# -- audit -----------------------------------------------------------------------------


def test_audit_sandwich_boundary(capsys):
    code, out, _ = run(["audit", "--set", "sandwich", "--k", "1", "--points", "boundary"], capsys)
    assert code == 0
    (rep,) = json_lines(out)
    assert rep["point"] == {"k": 1, "n": 3512} and rep["verdict"] == "certified_true"


def test_audit_bessel_231(capsys):
    code, out, _ = run(["audit", "--set", "bessel", "--s", "231"], capsys)
    assert code == 0
    assert {r["inequality_id"] for r in json_lines(out)} == {"bessel_upper_I1", "bessel_two_sided_I2"}


def test_audit_ratio_default(capsys):
    code, out, _ = run(["audit", "--set", "ratio", "--k", "2", "--points", "default"], capsys)
    assert code == 0
    assert [r["point"]["n"] for r in json_lines(out)] == [3512, 3600, 4096, 5000]


def test_audit_violation_exit(capsys):
    code, out, _ = run(["audit", "--set", "tail", "--s", "10"], capsys)
    assert code == 1
    assert "certified_false" in {r["verdict"] for r in json_lines(out)}


def test_audit_undecided_exit(capsys):
    code, out, _ = run(["audit", "--set", "bessel", "--s", "300000", "--prec-cap", "64"], capsys)
    assert code == 3
    assert "undecided" in {r["verdict"] for r in json_lines(out)}


def test_audit_summary_table(capsys):
    code, out, _ = run(["audit", "--set", "gk", "--k", "1", "--points", "boundary", "--format", "table"],
                       capsys)
    assert code == 0
    assert "gk_bound" in out and "max bits" in out


@pytest.mark.parametrize("argv", [["audit", "--set", "nope"], ["audit", "--set", "ratio", "--k", "3"],
                                  ["audit", "--set", "bessel", "--s", "x"],
                                  ["audit", "--set", "ratio", "--n", "1"]])
def test_audit_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


# -- mult ---------------------------------------------------------------------------


@pytest.mark.parametrize("k,a,b", [(1, 200, 200), (2, 50, 50), (1, 1, 1)])
def test_mult_examples(k, a, b, capsys):
    code, out, _ = run(["mult", "--k", str(k), "--a", str(a), "--b", str(b)], capsys)
    assert code == 0 and json.loads(out)["violations"] == []


def test_mult_rejects_zero(capsys):
    assert run(["mult", "--k", "1", "--a", "0", "--b", "3"], capsys)[0] == 2


# -- config, output and determinism -------------------------------------------------


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("k = 2\nd = 5\nhorizon = 2000\n")
    code, out, _ = run(["scan", "--config", str(cfg)], capsys)
    assert code == 0 and json_lines(out)[0]["N"] == 34
    code, out, _ = run(["scan", "--config", str(cfg), "--d", "4"], capsys)
    assert json_lines(out)[0]["N"] == 17
    cfg.write_text("colour = blue\n")
    assert run(["scan", "--config", str(cfg)], capsys)[0] == 2


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.csv"
    code, out, _ = run(["coeffs", "--k", "1", "--n", "3", "--format", "csv", "-o", str(path)], capsys)
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[-1] == "3,18"


def test_deterministic_output(capsys):
    argv = ["audit", "--set", "sandwich", "--k", "2,1", "--points", "boundary"]
    first = run(argv, capsys)[1]
    assert first == run(argv, capsys)[1]
    argv = ["verify", "--k", "1", "--from", "5", "--to", "9"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bkdiamond", "coeffs", "--k", "1", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coefficients"] == ["1", "3", "8"]


# -- seed-table ------------------------------------------------------------------


def test_seed_table_short_horizon(capsys):
    code, out, _ = run(["seed-table", "--horizon", "300"], capsys)
    assert code == 0
    assert "| 1 | status | match | match |" in out and "inconclusive" in out
    assert "MISMATCH" not in out


def test_seed_table_flags_mismatch():
    from bkdiamond.reference import PUBLISHED_THRESHOLDS, thresholds_markdown
    from bkdiamond.turan import TuranScanResult

    rows = {k: [TuranScanResult(d, 2000, n, [], k) for d, n in zip(range(2, 14), PUBLISHED_THRESHOLDS[k])]
            for k in (1, 2)}
    assert thresholds_markdown(rows, 2000)[1]
    rows[2][3] = TuranScanResult(5, 2000, 35, [], 2)
    text, ok = thresholds_markdown(rows, 2000)
    assert not ok and "MISMATCH" in text
