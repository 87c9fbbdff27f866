import csv
import io
import json
import subprocess
import sys

import pytest

from grmcurves import claims
from grmcurves.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_ghw_with_oracle(capsys):
    code, out, _ = run(capsys, "ghw", "-q", "3", "-m", "3", "-s", "2", "-r", "3", "--brute")
    assert code == 0
    (rec,) = records(out)
    assert rec["outputs"]["d_r"] == rec["outputs"]["brute"] == rec["outputs"]["support_weight"] == 17
    assert rec["ms"] is None and all(rec["checks"].values())
    assert set(rec) == {"command", "params", "outputs", "checks", "ms"}


def test_curve_and_timing(capsys):
    code, out, _ = run(capsys, "curve", "-p", "3", "-m", "3", "-R", "2*x^4+x^2-x", "--timing")
    (rec,) = records(out)
    assert code == 0
    assert (rec["outputs"]["genus"], rec["outputs"]["n_points"], rec["outputs"]["hw_bound"]) == (3, 55, 58)
    assert isinstance(rec["ms"], float)


def test_curve_with_generator(capsys):
    code, out, _ = run(capsys, "curve", "-p", "3", "-m", "3", "-R", "a*x^4+x^2", "--gen", "14")
    (rec,) = records(out)
    assert code == 0 and rec["params"]["generators"] == {"a": 14}


def test_subcode_and_fibre(capsys):
    polys = ["--poly", "X1^2-X1", "--poly", "X1*X2", "--poly", "X1*X3"]
    code, out, _ = run(capsys, "subcode", "-q", "3", "-m", "3", "-s", "2", *polys)
    (rec,) = records(out)
    assert code == 0
    assert rec["outputs"]["support_weight"] == 17 and rec["outputs"]["curve"]["n_points"] == 271
    code, out, _ = run(capsys, "fibre", "-p", "3", "-m", "3", "-R", "2*x^4+x^2-x", "-R", "x^2")
    assert code == 0 and records(out)[0]["command"] == "fibre"


def test_maximal_iterates_parameters(capsys):
    code, out, _ = run(capsys, "maximal", "--family", "5.5", "-p", "3", "-m", "4")
    recs = records(out)
    assert code == 0 and len(recs) == 8
    assert {(r["params"]["r"], r["params"]["d"]) for r in recs} == {(r, d) for r in (1, 2) for d in (1, 2, 5, 10)}
    assert all(r["outputs"]["maximal"] for r in recs)


def test_csv_output(capsys):
    code, out, _ = run(capsys, "maximal", "--family", "5.4", "-p", "3", "-m", "2", "-d", "2", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1
    assert rows[0]["outputs.genus"] == "1" and rows[0]["outputs.n_points"] == "16"


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "3.4", "--only", "1.3")
    recs = records(out)
    assert code == 0
    assert [r["params"]["claim"] for r in recs] == ["3.4", "1.3"]


def test_verify_grid_max_trims_grid(capsys):
    code, small, _ = run(capsys, "verify-paper", "--only", "5.1", "--grid-max", "9")
    assert code == 0
    code, full, _ = run(capsys, "verify-paper", "--only", "5.1")
    assert len(json.dumps(records(small))) < len(json.dumps(records(full)))


@pytest.mark.parametrize(
    "argv",
    [
        ["ghw", "-q", "3", "-m", "3", "-s", "9", "-r", "1"],
        ["ghw", "-q", "6", "-m", "2", "-s", "1", "-r", "1"],
        ["curve", "-p", "3", "-m", "3", "-R", "x^3+sin(x)"],
        ["curve", "-p", "3", "-m", "3", "-R", "x/2"],
        ["maximal", "--family", "5.4", "-p", "3", "-m", "2", "-d", "3"],
        ["verify-paper", "--only", "9.9"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_failed_check_exits_1(capsys, monkeypatch):
    failing = claims.ClaimResult("1.3", {}, {}, {"forced": False})
    monkeypatch.setitem(claims.CLAIMS, "1.3", lambda opts: failing)
    code, _, err = run(capsys, "verify-paper", "--only", "1.3")
    assert code == 1 and "FAILED" in err


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "grmcurves.cli", "verify-paper", "--only", "3.1", "--only", "5.3"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first
