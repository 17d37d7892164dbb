import io
import json
import subprocess
import sys

import pytest

from mosaictile.board import board
from mosaictile.cli import run
from mosaictile.oracle import weighted_count


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out=out, err=err)
    return status, out.getvalue().strip(), err.getvalue()


def test_seq_csv_q4():
    assert call("seq", "--q", "4", "--n", "0..5", "--method", "closed", "--a", "1", "--b", "1", "--format", "csv") == (
        0,
        "1,2,7,22,71,228",
        "",
    )


@pytest.mark.parametrize("method", ["oracle", "system", "closed", "frontier"])
def test_count_text(method):
    status, out, _ = call("count", "--q", "4", "--n", "2", "--method", method, "--format", "text")
    assert status == 0 and out == "a^4 + 4*a^2*b + 2*b^2"


def test_count_fib_and_json():
    assert call("count", "--q", "6", "--n", "3", "--method", "fib")[1] == "361"
    status, out, _ = call("count", "--q", "5", "--n", "2", "--method", "oracle", "--format", "json", "--a", "2", "--b", "3")
    doc = json.loads(out)
    assert status == 0
    assert doc["value"] == str(weighted_count(board(5, 2)).eval(2, 3))
    assert (doc["a"], doc["b"], doc["method"]) == (2, 3, "oracle")


def test_count_oracle_and_system_agree_on_subboards():
    for variant in ("A", "B", "C"):
        a = call("count", "--q", "5", "--n", "3", "--variant", variant, "--method", "oracle")
        b = call("count", "--q", "5", "--n", "3", "--variant", variant, "--method", "system")
        assert a == b and a[0] == 0


def test_unbreakable_counts():
    assert call("seq", "--q", "5", "--n", "1..6", "--unbreakable", "--method", "system", "--format", "csv")[1] == "3,7,11,24,46,94"
    assert call("seq", "--q", "4", "--n", "1..5", "--unbreakable", "--method", "closed", "--mode", "as_stated", "--format", "csv")[1] == "2,3,2,3,2"
    assert call("seq", "--q", "4", "--n", "1..5", "--unbreakable", "--method", "oracle", "--format", "csv")[1] == "2,3,2,2,2"


def test_path_board_count():
    assert call("count", "--variant", "path", "--m", "4", "--method", "closed")[1] == "a^4 + 3*a^2*b + b^2"


def test_board_json():
    status, out, _ = call("board", "--q", "4", "--n", "2")
    doc = json.loads(out)
    assert status == 0 and doc["edges"] == [[0, 1], [0, 2], [1, 3], [2, 3]]


def test_coeffs():
    assert call("coeffs", "--q", "6", "--a", "1", "--b", "1", "--format", "csv")[1] == "6,19,2,-1"
    assert call("coeffs", "--q", "6", "--method", "fib", "--format", "csv")[1] == "6,19,2,-1"
    assert call("coeffs", "--q", "4")[1].splitlines()[0] == "alpha = a^2 + b"
    assert call("coeffs", "--q", "7", "--method", "system") == call("coeffs", "--q", "7", "--method", "closed")


def test_verify_bundle():
    status, out, _ = call("verify", "--q", "4..6", "--n", "0..4", "--points", "(1,1);(2,3)")
    doc = json.loads(out)
    assert status == 0 and doc["ok"]
    stated = [leg for leg in doc["legs"] if leg["leg"] == "theorem2-as-stated"][0]
    assert stated["status"] == "expected-fail"
    assert stated["details"]["first_mismatch_at_a1_b1"]["4"]["n"] == 4


def test_verify_text():
    status, out, _ = call("verify", "--q", "4", "--n", "0..4", "--points", "1,1", "--format", "text")
    assert status == 0 and out.endswith("overall: PASS")
    assert "q=4 n=4 3 vs 2" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("count", "--q", "4", "--n", "2", "--method", "fib", "--a", "2", "--b", "1"),
        ("count", "--q", "3", "--n", "2"),
        ("count", "--q", "4", "--n", "1..3"),
        ("count", "--q", "4", "--n", "2", "--a", "1"),
        ("seq", "--q", "4", "--n", "x"),
        ("count", "--q", "4", "--n", "3", "--limit", "40"),
        ("count", "--q", "4", "--n", "2", "--variant", "A", "--method", "closed"),
        ("verify", "--points", "(1;2)"),
        ("nonsense",),
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_usage_error_names_option():
    assert "--a" in call("count", "--q", "4", "--n", "2", "--method", "fib", "--a", "2", "--b", "1")[2]


def test_oracle_limit_exit_status():
    status, _, err = call("count", "--q", "7", "--n", "6", "--method", "oracle")
    assert status == 3 and "limit" in err
    assert call("count", "--q", "4", "--n", "3", "--method", "oracle", "--limit", "40", "--allow-large", "--a", "1", "--b", "1") == (0, "22", "")
    assert call("count", "--q", "4", "--n", "3", "--method", "oracle", "--limit", "5")[0] == 3


def test_output_is_byte_identical():
    argv = ("seq", "--q", "5", "--n", "0..6", "--format", "json")
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mosaictile", "seq", "--q", "4", "--n", "0..3", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1,2,7,22"
