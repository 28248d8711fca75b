import io
import os

import pytest

from quadsplit.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run_cli(argv):
    out = io.StringIO()
    err = io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def golden_path(name):
    return os.path.join(GOLDEN, name)


def read_golden(name):
    with open(golden_path(name), "r", encoding="utf-8") as fh:
        return fh.read()


CLASSIFY_CASES = [
    ("f2_quot_yes", 0),
    ("f2_diff_no", 1),
    ("q_quot_x3_yes", 0),
    ("q_quot_x1_no", 1),
    ("q_diff_doubled_yes", 0),
    ("fps_unknown", 2),
    ("f3_diff_zero_yes", 0),
    ("f3_diff_translate", 0),
    ("q_frac_entries", 1),
    ("fps_ratfunc_entries", 0),
]


@pytest.mark.parametrize("name,expected_exit", CLASSIFY_CASES)
def test_classify_golden(name, expected_exit):
    code, out, _ = run_cli(
        ["--deterministic", "classify", golden_path(f"{name}.txt")]
    )
    assert code == expected_exit
    assert out == read_golden(f"{name}.classify.out")


def test_classify_golden_json():
    code, out, _ = run_cli(
        ["--deterministic", "--format", "json", "classify", golden_path("f2_quot_yes.txt")]
    )
    assert code == 0
    assert out == read_golden("f2_quot_yes.json.out")


@pytest.mark.parametrize("name", ["f2_quot_yes", "q_quot_x3_yes"])
def test_witness_golden(name):
    code, out, _ = run_cli(["--deterministic", "witness", golden_path(f"{name}.txt")])
    assert code == 0
    assert out == read_golden(f"{name}.witness.out")


def test_witness_byte_stable_across_runs():
    runs = {
        run_cli(["--deterministic", "witness", golden_path("f2_quot_yes.txt")])[1]
        for _ in range(3)
    }
    assert len(runs) == 1


def test_verify_golden():
    code, out, _ = run_cli(["--deterministic", "verify", golden_path("f2_verify_ok.txt")])
    assert code == 0
    assert out == read_golden("f2_verify_ok.out")
    code, out, _ = run_cli(["--deterministic", "verify", golden_path("f2_verify_bad.txt")])
    assert code == 1
    assert out == read_golden("f2_verify_bad.out")


def test_atlas_golden():
    code, out, _ = run_cli(
        ["--deterministic", "atlas", golden_path("f2_quot_yes.txt"), "--bound", "2"]
    )
    assert code == 0
    assert out == read_golden("f2_atlas2.out")


def test_oracle_compare_golden():
    code, out, _ = run_cli(
        ["--deterministic", "oracle-compare", golden_path("f2_quot_yes.txt"), "--n", "2"]
    )
    assert code == 0
    assert out == read_golden("f2_oracle2.out")


def test_parse_error_exit_64():
    code, out, err = run_cli(["classify", golden_path("parse_err.txt")])
    assert code == 64
    assert out == ""
    assert "parse error" in err


def test_noninvertible_quotient_exit_65():
    code, out, err = run_cli(["classify", golden_path("noninvertible_quot.txt")])
    assert code == 65
    assert "invertible" in err


def test_witness_verify_round_trip(tmp_path):
    # feed the witness output back through verify
    code, out, _ = run_cli(["witness", golden_path("f2_quot_yes.txt")])
    assert code == 0
    lines = out.splitlines()
    a_rows = lines[1:3]
    b_rows = lines[4:6]
    combined = read_golden("f2_quot_yes.txt") + "A\n" + "\n".join(a_rows) + "\nB\n" + "\n".join(b_rows) + "\n"
    path = tmp_path / "roundtrip.txt"
    path.write_text(combined)
    code, out, _ = run_cli(["verify", str(path)])
    assert code == 0


def test_missing_sections_rejected(tmp_path):
    path = tmp_path / "incomplete.txt"
    path.write_text("field Fp 2\np 1 1 1\nmode difference\n")
    code, _, err = run_cli(["classify", str(path)])
    assert code == 64
