import csv
import json
import shutil
import subprocess

import pytest

from clspace.cli import main

SQUARE = '{"zoo": "power", "args": {"p": 2}}'
L1 = '{"kind": "Lp", "p": 1}'


def run(tmp_path, *argv):
    code = main([*argv, "--out", str(tmp_path)])
    report = json.loads((tmp_path / "report.json").read_text()) if (tmp_path / "report.json").exists() else None
    return code, report


def summary(tmp_path):
    with open(tmp_path / "summary.csv", newline="") as fh:
        return list(csv.DictReader(fh))


def test_norm_of_indicator(tmp_path, capsys):
    vec = '{"parts": [{"from": 0, "to": 4, "value": 1}]}'
    code, rep = run(tmp_path, "norm", "--function", SQUARE, "--space", L1, "--vector", vec, "--audit")
    assert code == 0
    assert rep["result"]["norm"] == pytest.approx(2.0, rel=1e-9)
    assert rep["audit"]["passed"]
    assert rep["provenance"]["grid"]["u_max"] == 1e8 and rep["provenance"]["tol"] == 1e-10
    assert "audit: PASS" in capsys.readouterr().out
    assert summary(tmp_path)


def test_modular_and_f_norm(tmp_path):
    vec = '{"parts": [{"from": 0, "to": 1, "value": 4}]}'
    linear = '{"zoo": "power", "args": {"p": 1}}'
    code, rep = run(tmp_path, "fnorm", "--function", linear, "--space", L1, "--vector", vec)
    assert code == 0 and rep["result"]["norm"] == pytest.approx(2.0, rel=1e-9)
    code, rep = run(tmp_path, "modular", "--function", linear, "--space", L1, "--vector", vec)
    assert code == 0 and rep["result"]["modular"] == 4.0


def test_modular_infinite_is_serialized(tmp_path):
    vec = '{"parts": [{"from": 0, "to": 1, "value": 2}]}'
    code, rep = run(tmp_path, "modular", "--function", '{"zoo": "linear_then_inf"}', "--space", L1, "--vector", vec)
    assert code == 0 and rep["result"]["modular"] == "INF"


def test_check_delta_eps_fails_for_dyadic_growth(tmp_path):
    code, rep = run(tmp_path, "check", "delta_eps", "--function", '{"zoo": "dyadic_growth"}', "--regime", "inf",
                    "--audit")
    assert code == 0
    verdict = rep["result"]["delta_eps"]
    assert verdict["holds"] is False and len(verdict["witness"]) >= 3
    assert rep["audit"]["passed"]


def test_check_all_conditions(tmp_path):
    code, rep = run(tmp_path, "check", "--function", SQUARE)
    assert code == 0 and set(rep["result"]) == {"delta2", "delta_eps", "delta_2str"}
    assert rep["result"]["delta2"]["constants"]["K"] == 4.0


def test_index(tmp_path):
    code, rep = run(tmp_path, "index", "--function", SQUARE, "--regime", "all")
    assert code == 0
    est = rep["result"]["all"] if "all" in rep["result"] else rep["result"]
    assert est["lo"] <= 2.0 <= est["hi"]


def test_witness_bundle(tmp_path):
    code, rep = run(tmp_path, "witness", "--variant", "interval_infinity", "--function", '{"zoo": "linear_then_inf"}',
                    "--space", L1, "--N", "4", "--audit")
    assert code == 0
    assert rep["result"]["verification"]["passed"]
    assert rep["result"]["bundle"]["evidence"] == "finite-truncation evidence"
    assert len(summary(tmp_path)) >= 4


def test_proof_schedule_truncation_misses_the_window(tmp_path):
    # with u_n = (2n+1)/(2n+2) a depth-4 truncation has ||y_m|| = max u_n < 1
    code, rep = run(tmp_path, "witness", "--variant", "interval_infinity", "--function", '{"zoo": "linear_then_inf"}',
                    "--space", L1, "--N", "4", "--schedule", "proof", "--audit")
    assert code == 4
    ver = rep["result"]["verification"]
    assert not ver["y_norms_in_window"]
    assert ver["sum_y_norm"] == pytest.approx(9 / 10, rel=1e-9)
    assert rep["audit"]["passed"]


def test_witness_precondition_exit(tmp_path):
    code, _ = run(tmp_path, "witness", "--variant", "interval_infinity", "--function", '{"zoo": "dyadic_growth"}',
                  "--space", L1, "--N", "3")
    assert code == 2


def test_witness_horizon_exit(tmp_path):
    code, _ = run(tmp_path, "witness", "--variant", "seq_flat_zero", "--function", '{"zoo": "zero_then_linear"}',
                  "--space", '{"kind": "cesaro", "p": 2}', "--N", "10", "--horizon", "1000")
    assert code == 3


def test_unsupported_space_exit(tmp_path):
    code, _ = run(tmp_path, "witness", "--variant", "seq_jump", "--function", '{"zoo": "linear_then_inf"}',
                  "--space", L1, "--N", "3")
    assert code == 2


def test_blowup_not_found_exit(tmp_path):
    code, rep = run(tmp_path, "blowup", "--function", SQUARE, "--space", L1, "--target", "2")
    assert code == 3
    assert rep["result"]["outcome"] == "NOT_FOUND"


def test_blowup_found(tmp_path):
    code, rep = run(tmp_path, "blowup", "--function", '{"zoo": "log1p"}', "--space", L1, "--target", "10", "--audit")
    assert code == 0 and rep["result"]["exceeded"] and rep["audit"]["passed"]


def test_malformed_json(tmp_path, capsys):
    code, rep = run(tmp_path, "index", "--function", '{"zoo": }')
    assert code == 1 and rep is None
    assert "line 1, column 9" in capsys.readouterr().err


def test_malformed_json_file(tmp_path, capsys):
    bad = tmp_path / "phi.json"
    bad.write_text('{\n  "pieces": [\n')
    code, _ = run(tmp_path, "index", "--function", str(bad))
    assert code == 1
    assert "line 3" in capsys.readouterr().err


def test_invalid_descriptor(tmp_path):
    decreasing = '{"pieces": [{"from": 0, "to": 2, "kind": "nodes", "nodes": [[0, 0], [1, 2], [2, 1]]}]}'
    code, _ = run(tmp_path, "index", "--function", decreasing)
    assert code == 1


def test_missing_file(tmp_path):
    code, _ = run(tmp_path, "index", "--function", str(tmp_path / "nope.json"))
    assert code == 1


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["check", "--function", '{"zoo": "dyadic_growth"}', "--regime", "inf", "--audit"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    for name in ("report.json", "summary.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_report_has_no_nan_literals(tmp_path):
    run(tmp_path, "check", "--function", '{"zoo": "square_then_inf"}')
    text = (tmp_path / "report.json").read_text()
    assert "NaN" not in text.replace('"NaN"', "") and "Infinity" not in text


def test_suite_subset(tmp_path, capsys):
    code, rep = run(tmp_path, "suite", "--only", "2,3,14")
    assert code == 0
    assert [c["id"] for c in rep["result"]] == [2, 3, 14]
    out = capsys.readouterr().out
    assert out.count("PASS") >= 3
    assert "seconds" not in json.dumps(rep)
    assert "seconds" in summary(tmp_path)[0]


def test_suite_failure_exit(tmp_path):
    # criterion 5 fails on the default grid, see the acceptance notes
    code, rep = run(tmp_path, "suite", "--only", "5")
    assert code == 4
    assert rep["result"][0]["status"] == "FAIL"


def test_suite_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["suite", "--only", "2,3,7,14", "--out", str(a)]) == 0
    assert main(["suite", "--only", "2,3,7,14", "--jobs", "2", "--out", str(b)]) == 0
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_figures(tmp_path):
    figs = tmp_path / "figs"
    vec = '{"parts": [{"from": 0, "to": 4, "value": 1}]}'
    code = main(["norm", "--function", SQUARE, "--space", L1, "--vector", vec, "--out", str(tmp_path),
                 "--figures", str(figs)])
    assert code == 0
    pngs = list(figs.glob("*.png"))
    assert pngs and pngs[0].read_bytes()[:4] == b"\x89PNG"
    assert "png" not in (tmp_path / "report.json").read_text().lower()


@pytest.mark.skipif(shutil.which("clspace") is None, reason="console script not installed")
def test_console_script(tmp_path):
    proc = subprocess.run(["clspace", "index", "--function", SQUARE, "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "wrote" in proc.stdout
