import json
import subprocess
import sys

import pytest

from taucluster.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tautilt_a2_is_a_pentagon(capsys, algebra_file):
    code, out, _ = run(capsys, "tautilt", "--algebra", str(algebra_file("A2")))
    doc = json.loads(out)
    assert code == 0
    assert len(doc["nodes"]) == 5 and len(doc["edges"]) == 5


def test_tautilt_field(capsys, algebra_file):
    code, out, _ = run(capsys, "tautilt", "--algebra", str(algebra_file("field")))
    assert code == 0 and len(json.loads(out)["nodes"]) == 2


def test_tautilt_dot(capsys, algebra_file):
    code, out, _ = run(capsys, "tautilt", "--algebra", str(algebra_file("A2")), "--format", "dot")
    assert code == 0 and out.startswith("graph exchange") and out.count("--") == 5


def test_malformed_json_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [')
    code, _, err = run(capsys, "tautilt", "--algebra", str(bad))
    assert code == 2 and "malformed" in err


def test_missing_file_and_bad_caps(capsys, tmp_path, algebra_file):
    assert run(capsys, "tautilt", "--algebra", str(tmp_path / "none.json"))[0] == 2
    assert run(capsys, "tautilt", "--algebra", str(algebra_file("A2")), "--max-ind", "0")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_tcmc_counts(capsys, algebra_file):
    code, out, _ = run(capsys, "tcmc", "--algebra", str(algebra_file("A2")))
    doc = json.loads(out)
    assert code == 0
    assert len(doc["module_side"]["objects"]) == 5
    assert doc["equivalence"]["passed"]
    code, out, _ = run(capsys, "tcmc", "--algebra", str(algebra_file("field")))
    assert code == 0 and len(json.loads(out)["silting_side"]["objects"]) == 2


def test_tcmc_beyond_cap(capsys, algebra_file):
    code, _, err = run(capsys, "tcmc", "--algebra", str(algebra_file("kronecker")), "--max-mut", "8")
    assert code == 3 and "cap" in err


def test_sequences(capsys, algebra_file):
    path = str(algebra_file("A2"))
    code, out, _ = run(capsys, "sequences", "--length", "2", "--algebra", path)
    doc = json.loads(out)
    assert code == 0 and doc["bijection"] and len(doc["sequences"]) == 10
    assert all(r["full_length"] and r["k0_independent"] and r["euler_triangular"] for r in doc["sequences"])
    code, out, _ = run(capsys, "sequences", "--length", "0", "--algebra", path)
    assert code == 0 and len(json.loads(out)["sequences"]) == 1
    code, out, _ = run(capsys, "sequences", "--length", "3", "--algebra", path)
    assert code == 0 and json.loads(out)["sequences"] == []


@pytest.mark.parametrize("name", ["A2", "N3"])
def test_verify_all_pass(capsys, algebra_file, name):
    code, out, _ = run(capsys, "verify", "--algebra", str(algebra_file(name)))
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert {r["check"] for r in doc["reports"]} >= {"h_bijection", "reduction_square", "equivalence", "k0_and_euler"}


def test_output_is_deterministic(capsys, algebra_file, tmp_path):
    path = str(algebra_file("A2"))
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    run(capsys, "verify", "--algebra", path, "--out", str(a))
    run(capsys, "verify", "--algebra", path, "--out", str(b))
    run(capsys, "verify", "--algebra", path, "--out", str(c), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_table_format(capsys, algebra_file):
    code, out, _ = run(capsys, "verify", "--algebra", str(algebra_file("A2")), "--format", "table")
    assert code == 0 and "FAIL" not in out and out.count("PASS") >= 10


def test_module_entry_point(algebra_file):
    proc = subprocess.run(
        [sys.executable, "-m", "taucluster", "tcmc", "--algebra", str(algebra_file("A2")), "--format", "table"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("5 objects")
