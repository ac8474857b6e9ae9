import json
import subprocess
import sys

import pytest

from sfmirror.cli import main, resolve_spec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--spec", "(0,0,0,0,12,13)", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "sfmirror.report/1"
    assert data["jacobi"] and data["unimodular"]
    assert data["betti"] == [1, 4, 9, 12, 9, 4, 1]
    assert data["brackets"] == ["[E1,E2] = -E5", "[E1,E3] = -E6"]


def test_check_accepts_json_specs(capsys):
    assert run(capsys, "check", "--spec", '["0", "0", "12"]')[0] == 0
    code, out, _ = run(capsys, "check", "--spec", '{"spec": "(0,0,λ12)", "params": {"lambda": "2"}}')
    assert code == 0
    assert "2*e12" in out


def test_resolve_catalog_row():
    spec, params = resolve_spec("row2")
    assert spec.startswith("(0,0,0,")
    assert "lambda" in params


def test_check_failure_exit_code(capsys):
    code, out, _ = run(capsys, "check", "--spec", "(0,0,12,34)")
    assert code == 1
    assert "check: FAIL" in out


@pytest.mark.parametrize("argv", [
    ["check", "--spec", "(0,e^{1"],
    ["check", "--spec", "(0,λ12)"],
    ["mirror", "build", "--affine", "nowhere"],
    ["mirror", "build"],
    ["holonomy", "--m", "2"],
    ["table2", "--bogus"],
    ["su3", "check"],
    ["cohomology", "ty", "--algebra", "row1"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_su3_rows(capsys):
    assert run(capsys, "su3", "check", "--row", "1")[0] == 0
    assert run(capsys, "su3", "check", "--row", "3")[0] == 1
    assert run(capsys, "su3", "check", "--row", "3", "--corrected")[0] == 0
    code, out, _ = run(capsys, "su3", "check", "--spec", "(0,0,0,0,0,0)", "--omega", "e14+e25+e36",
                       "--Omega", "(e1+ie4)(e2+ie5)(e3+ie6)", "--json")
    data = json.loads(out)
    assert code == 0 and data["iiA"] and data["iiB"]


def test_mirror_build(capsys):
    code, out, _ = run(capsys, "mirror", "build", "--affine", "H3-twisted", "--lambda", "2")
    assert code == 0
    assert "(-e35,-e34,0,0,0,-e45)" in out
    code, out, _ = run(capsys, "mirror", "build", "--affine", "E11-untwisted", "--m", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["holonomy"]["ok"]


def test_mirror_build_reports_listing_mismatch(capsys):
    code, out, _ = run(capsys, "mirror", "build", "--affine", "E11-twisted")
    assert code == 1
    assert "de^1: computed e26+e35, printed -e26-e35" in out


@pytest.mark.parametrize("m", ["3", "4", "5"])
def test_holonomy(capsys, m):
    assert run(capsys, "holonomy", "--m", m)[0] == 0
    assert run(capsys, "mirror", "holonomy", "--m", m, "--twisted", "--strict")[0] == 0


def test_cohomology_table(capsys):
    code, out, _ = run(capsys, "cohomology", "ty", "--affine", "H3-untwisted", "--all-pq", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["table"][1][0] == 2
    code, out, _ = run(capsys, "cohomology", "bc", "--algebra", "E11-twisted", "--pq", "2,0")
    assert code == 0 and "h_BC^{2,0} = 1" in out


def test_fm_verify(capsys):
    assert run(capsys, "fm", "verify")[0] == 0


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--json")
    data = json.loads(out)
    assert code == 0
    assert len(data["table1"]) == 8 and len(data["affine"]) == 5 and len(data["table2"]) == 7
    assert all(entry["provenance"] for entry in data["table1"] + data["table2"])


def test_table1_exit_code(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 1
    assert out.count("PASS") == 6


def test_table2_deterministic():
    cmd = [sys.executable, "-m", "sfmirror", "table2"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert b"table2: PASS" in a.stdout
