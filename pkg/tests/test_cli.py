import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from lowrankdm import __version__
from lowrankdm.cli import EXIT_INVALID, EXIT_NUMERICAL, EXIT_OK, run
from lowrankdm.spectra import format_matrix

REPORT_KEYS = {"command", "inputs", "results", "tolerances", "version"}


def invoke(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    return code, out.getvalue()


def invoke_json(*argv):
    code, text = invoke(*argv)
    assert text.count("\n") == 1
    return code, json.loads(text)


@pytest.fixture
def diag_file(tmp_path):
    path = tmp_path / "x.txt"
    path.write_text(format_matrix(np.diag([0.5, 0.3, 0.2])))
    return path


def test_approx_trace_distance(diag_file):
    code, rep = invoke_json("approx", diag_file, "--k", 2, "--norm", "trace")
    assert code == EXIT_OK
    assert set(rep) == REPORT_KEYS
    assert rep["command"] == "approx"
    assert rep["version"] == __version__
    res = rep["results"]
    assert res["distance"] == pytest.approx(0.4, abs=1e-12)
    assert res["gamma"] == pytest.approx(0.1, abs=1e-12)
    assert res["residual_spectrum"] == pytest.approx([-0.1, -0.1, 0.2], abs=1e-12)
    assert "Y" not in res


def test_approx_show_y(diag_file):
    code, rep = invoke_json("approx", diag_file, "--k", 2, "--show-y")
    assert code == EXIT_OK
    Y = np.array(rep["results"]["Y"])
    Y = Y[..., 0] + 1j * Y[..., 1]
    assert np.allclose(Y, np.diag([0.6, 0.4, 0.0]), atol=1e-12)


def test_distance_matches_approx(diag_file):
    for norm in ("trace", "frobenius", "operator", "schatten:3", "kyfan:2"):
        _, a = invoke_json("approx", diag_file, "--k", 1, "--norm", norm)
        _, d = invoke_json("distance", diag_file, "--k", 1, "--norm", norm)
        assert set(d["results"]) == {"distance"}
        assert d["results"]["distance"] == a["results"]["distance"]


def test_farthest_json_example():
    code, rep = invoke_json("farthest", "--n", 14, "--k", 9, "--norm", "schatten:4.1")
    assert code == EXIT_OK
    assert rep["results"]["argmax_m"] == 13
    assert set(rep["results"]["candidate_distances"]) == {str(m) for m in range(10, 15)}


@pytest.mark.parametrize("n,k", [(2, 1), (7, 3), (14, 9)])
def test_farthest_csv_rows(n, k):
    code, text = invoke("farthest", "--n", n, "--k", k, "--norm", "trace", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["m", "distance", "is_argmax"]
    data = rows[1:]
    assert len(data) == n - k
    assert [int(r[0]) for r in data] == list(range(k + 1, n + 1))
    assert [r[2] for r in data].count("1") == 1
    assert float(data[-1][1]) == pytest.approx(2 * (n - k) / n, abs=1e-15)


def test_csv_floats_round_trip():
    _, text = invoke("farthest", "--n", 7, "--k", 3, "--norm", "schatten:3", "--format", "csv")
    _, rep = invoke_json("farthest", "--n", 7, "--k", 3, "--norm", "schatten:3")
    rows = list(csv.reader(io.StringIO(text)))[1:]
    for m, d, _ in rows:
        assert float(d) == rep["results"]["candidate_distances"][m]


def test_kyfan_m():
    code, rep = invoke_json("kyfan-m", "--n", 9, "--k", 5, "--r", 4)
    assert code == EXIT_OK
    assert rep["results"]["predicted_m"] == 8
    assert rep["results"]["predicted_distance"] == pytest.approx(9 / 20, abs=1e-12)


def test_kyfan_m_inconsistency_is_numerical_failure():
    # the case table is wrong for this triple, see test_farthest
    code, rep = invoke_json("kyfan-m", "--n", 6, "--k", 3, "--r", 3)
    assert code == EXIT_NUMERICAL
    assert rep["error"]["type"] == "InternalInconsistency"


@pytest.mark.parametrize("p,expected", [("3", True), ("1", True), ("4", True), ("1.5", False), ("5", False), ("inf", False)])
def test_schatten_class(p, expected):
    code, rep = invoke_json("schatten-class", "--p", p)
    assert code == EXIT_OK
    assert rep["results"]["always_maximally_mixed"] is expected


def test_crossing():
    code, rep = invoke_json("crossing", "--n", 14, "--k", 9, "--m1", 14, "--m2", 13, "--bracket", 3.5, 5)
    assert code == EXIT_OK
    assert rep["results"]["p"] == pytest.approx(4.008653, abs=1e-6)
    assert rep["inputs"]["bracket"] == [3.5, 5.0]


def test_crossing_without_sign_change():
    code, rep = invoke_json("crossing", "--n", 14, "--k", 9, "--m1", 14, "--m2", 13, "--bracket", 1, 2)
    assert code == EXIT_NUMERICAL
    assert rep["error"]["type"] == "NoSignChange"


def test_counterexample():
    code, rep = invoke_json("counterexample", "--p", 5)
    assert code == EXIT_OK
    res = rep["results"]
    assert res["found"] is True
    assert res["distance_x"] > res["distance_maxmixed"]


def test_counterexample_not_found():
    code, rep = invoke_json("counterexample", "--p", 3, "--n-max", 50, "--m-max", 20)
    assert code == EXIT_OK
    assert rep["results"] == {"found": False}


def test_verify_random(monkeypatch):
    monkeypatch.setenv("LOWRANKDM_SEED", "7")
    code, rep = invoke_json("verify", "--n", 3, "--k", 1, "--norm", "frobenius", "--restarts", 3)
    assert code == EXIT_OK
    assert rep["inputs"]["seed"] == 7
    assert abs(rep["results"]["gap"]) <= 1e-5


def test_verify_file(diag_file):
    code, rep = invoke_json("verify", "--input", diag_file, "--k", 2, "--norm", "trace", "--restarts", 3)
    assert code == EXIT_OK
    assert rep["results"]["closed_form"] == pytest.approx(0.4, abs=1e-12)
    assert rep["results"]["oracle"] == pytest.approx(0.4, abs=1e-6)


def test_verify_deterministic():
    a = invoke("verify", "--n", 3, "--k", 2, "--norm", "operator", "--seed", 5, "--restarts", 2)
    b = invoke("verify", "--n", 3, "--k", 2, "--norm", "operator", "--seed", 5, "--restarts", 2)
    assert a == b


def test_infinity_serialised_as_string():
    _, rep = invoke_json("schatten-class", "--p", "inf")
    assert rep["inputs"]["p"] == "inf"


def test_tolerance_override(tmp_path):
    path = tmp_path / "x.txt"
    path.write_text("2\n0.5 0\n0 0.5000001\n")
    code, rep = invoke_json("distance", path, "--k", 1)
    assert code == EXIT_INVALID
    assert rep["error"]["type"] == "TraceNotOne"
    code, rep = invoke_json("distance", path, "--k", 1, "--tol-trace", 1e-6)
    assert code == EXIT_OK
    assert rep["tolerances"]["trace"] == 1e-6


@pytest.mark.parametrize(
    "argv,error",
    [
        (["approx", "missing.txt", "--k", "1"], "FileNotFoundError"),
        (["farthest", "--n", "3", "--k", "3"], "BadRange"),
        (["farthest", "--n", "3", "--k", "1", "--norm", "schatten:0.5"], "InvalidSpec"),
        (["farthest", "--n", "3", "--k", "1", "--norm", "kyfan:4"], "InvalidSpec"),
        (["farthest", "--n", "3"], "UsageError"),
        (["bogus"], "UsageError"),
        (["verify", "--k", "1"], "UsageError"),
        (["verify", "--n", "3", "--k", "1", "--restarts", "0"], "BadRange"),
    ],
)
def test_invalid_input_exit_code(argv, error, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, rep = invoke_json(*argv)
    assert code == EXIT_INVALID
    assert rep["error"]["type"] == error
    assert rep["error"]["message"]


@pytest.mark.parametrize(
    "text,error",
    [
        ("2\n1 0\n0 1\n", "TraceNotOne"),
        ("2\n0.5 0.2\n0.1 0.5\n", "NotHermitian"),
        ("3\n0.5 0 0\n0 0.6 0\n0 0 -0.1\n", "NotPSD"),
        ("2\n0.5 x\n0 0.5\n", "MatrixParseError"),
        ("3\n1 0\n0 0\n", "MatrixParseError"),
    ],
)
def test_bad_matrix_files(tmp_path, text, error):
    path = tmp_path / "m.txt"
    path.write_text(text)
    code, rep = invoke_json("approx", path, "--k", 1)
    assert code == EXIT_INVALID
    assert rep["error"]["type"] == error


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lowrankdm", "schatten-class", "--p", "2.5"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["always_maximally_mixed"] is True
