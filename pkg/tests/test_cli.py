from __future__ import annotations

import json
import subprocess
import sys

import pytest

from grasspole.cli import run



def factored(field, M, m):
    """System file content for [N D] with N the first m columns."""
    return {
        "field": field,
        "kind": "factored",
        "N": [row[:m] for row in M],
        "D": [row[m:] for row in M],
    }


MAT_2X4 = [[["0"], ["0", "1"], ["1", "1"], ["0", "0", "1"]], [["1"], ["1", "0", "1"], ["1"], ["0", "1"]]]
MAT_DEG = [[["1"], ["0", "1"], ["0", "1"], ["0", "0", "1"]], [["0"], ["1"], ["2"], ["0", "3"]]]


@pytest.fixture
def sysfile(tmp_path):
    def write(data, name="sys.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_schubert(capsys):
    code, out, _ = call(capsys, "schubert", "--m", "3", "--p", "3")
    assert code == 0 and json.loads(out) == {"m": 3, "p": 3, "d": "42"}


def test_field_info(capsys):
    code, out, _ = call(capsys, "field-info", "--field", "2^2")
    rep = json.loads(out)
    assert code == 0 and len(rep["elements"]) == 4


def test_verify_f2(capsys):
    code, out, _ = call(capsys, "verify-f2")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and len(rep["cases"]) == 28
    assert all(c["image_size"] == 25 for c in rep["cases"])


def test_degeneracy_methods(capsys, sysfile):
    path = sysfile(factored("5", MAT_DEG, 2))
    code, out, _ = call(capsys, "degeneracy", "--system", path, "--method", "enumerate")
    rep = json.loads(out)
    assert code == 0 and rep["degenerate"] and rep["check"] == []
    code, out, _ = call(capsys, "degeneracy", "--system", path, "--expect", "degenerate")
    assert code == 0 and json.loads(out)["verdict"] == "degenerate"
    code, _, _ = call(capsys, "degeneracy", "--system", path, "--expect", "nondegenerate")
    assert code == 1


def test_minors_csv(capsys, sysfile):
    path = sysfile(factored("2", MAT_2X4, 2))
    code, out, _ = call(capsys, "minors", "--system", path, "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "columns,minor" and len(lines) == 7


def test_census_and_fiber(capsys, sysfile):
    path = sysfile(factored("2", MAT_2X4, 2))
    code, out, _ = call(capsys, "census", "--system", path)
    rep = json.loads(out)
    assert code == 0 and rep["image_size"] == 25 and rep["histogram"] == {"1": 15, "2": 10}
    code, out, _ = call(capsys, "fiber", "--system", path, "--target", "1,1,0,0,1")
    assert code == 0 and json.loads(out)["total_multiplicity"] == 2


def test_constructions(capsys, sysfile):
    code, out, _ = call(capsys, "main-theorem-system", "--field", "7", "--m", "2", "--p", "2", "--expect", "nondegenerate")
    assert code == 0 and json.loads(out)["degree"] == 4
    code, out, _ = call(capsys, "onc", "--field", "2", "--m", "2", "--p", "3")
    assert json.loads(out)["zero_rows"] == [2]
    code, out, _ = call(capsys, "onc", "--field", "2", "--m", "2", "--p", "3", "--hasse")
    assert json.loads(out)["zero_rows"] == []
    spec = {"field": "5", "coefficients": [[1, 1, 1, 1], [0, 1, 2, 3]], "degrees": [[0, 1, 1, 2], [0, 0, 0, 1]]}
    code, out, _ = call(capsys, "monomial", "--system", sysfile(spec, "mono.json"))
    assert code == 0 and json.loads(out)["coefficient_mds"]
    code, out, _ = call(capsys, "mds-check", "--field", "2", "--m", "2", "--p", "2")
    assert json.loads(out)["exists"] is False


def test_factorize_and_identities(capsys, sysfile):
    ss = {"field": "5", "kind": "state_space", "A": [[0, 1], [0, 0]], "B": [[0], [1]], "C": [[1, 0]]}
    code, out, _ = call(capsys, "factorize", "--system", sysfile(ss))
    assert code == 0 and json.loads(out)["verified"]
    code, out, _ = call(capsys, "identities", "--field", "7", "--count", "10", "--seed", "3")
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == [] and rep["passed"]["triple"] == 10


def test_deterministic_output(capsys):
    a = call(capsys, "identities", "--field", "5", "--count", "5", "--seed", "9")
    b = call(capsys, "identities", "--field", "5", "--count", "5", "--seed", "9")
    assert a == b


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = call(capsys, "schubert", "--m", "2", "--p", "2", "--out", str(target))
    assert code == 0 and out == "" and json.loads(target.read_text())["d"] == "2"


def test_usage_errors(capsys, monkeypatch):
    assert call(capsys, "schubert", "--m", "2")[0] == 2
    assert call(capsys, "field-info", "--field", "6")[0] == 2
    assert call(capsys, "degeneracy", "--system", "/nonexistent.json")[0] == 2
    assert call(capsys, "schubert", "--m", "2", "--p", "2", "--format", "csv")[0] == 2
    assert call(capsys, "bogus")[0] == 2
    monkeypatch.setenv("GRASSPOLE_THREADS", "zero")
    assert call(capsys, "schubert", "--m", "2", "--p", "2")[0] == 2


def test_library_error_is_structured(capsys):
    code, out, _ = call(capsys, "main-theorem-system", "--field", "3", "--m", "2", "--p", "2")
    rep = json.loads(out)
    assert code == 1 and rep["error"] == "FieldTooSmall"


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "grasspole", "schubert", "--m", "2", "--p", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["d"] == "5"
