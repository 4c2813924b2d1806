import io
import json
import subprocess
import sys

import pytest

from relkit.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_REFUTED, main

CATALOG = """\
[entry]
id = D5
degree = 5
gen = (1,2,3,4,5)
gen = (2,5)(3,4)
claim = order 10
claim = defined-by [1,2]
"""


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def catalog_file(tmp_path):
    p = tmp_path / "cat.txt"
    p.write_text(CATALOG)
    return p


def test_verify_ok(catalog_file):
    code, out = run("verify", str(catalog_file))
    assert code == EXIT_OK
    assert "CONFIRMED" in out and "confirmed 2" in out


def test_verify_refuted_exit_code(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(CATALOG.replace("order 10", "order 11"))
    code, out = run("verify", str(p), "--format", "records")
    assert code == EXIT_REFUTED
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0]["verdict"] == "refuted" and rows[0]["value"] == "10"


def test_verify_filters_bundled_catalog():
    code, out = run("verify", "--degrees", "7..7", "--id", "G_7_*", "--format", "records")
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and all(r["entry"].startswith("G_7_") for r in rows)
    assert code == EXIT_OK


def test_timings_flag(catalog_file):
    _, out = run("verify", str(catalog_file), "--format", "records", "--timings")
    assert all("elapsed" in json.loads(line) for line in out.splitlines())


def test_input_errors(tmp_path, capsys):
    assert run("verify", str(tmp_path / "missing.txt"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("[entry]\nid = A\ndegree = 5\nclaim = fly\n")
    assert run("verify", str(bad))[0] == EXIT_INPUT
    assert "line 4" in capsys.readouterr().err
    assert run("orbits", "--gens", "(1,9)", "--degree", "5")[0] == EXIT_INPUT
    assert run("frobnicate")[0] == EXIT_INPUT
    assert run("aut", "--degree", "4")[0] == EXIT_INPUT


def test_budget_refusal(capsys):
    code, _ = run("orbits", "--gens", "(1,2)", "--degree", "20", "--scan-budget", "1000")
    assert code == EXIT_BUDGET
    assert "--scan-budget" in capsys.readouterr().err


def test_orbits():
    code, out = run("orbits", "--gens", "(1,2,3,4,5)", "--degree", "5")
    assert code == EXIT_OK
    assert "order 5" in out
    assert "  2       2 orbits  sizes 5 5" in out


def test_regsets():
    _, out = run("regsets", "--gens", "(1,2,3,4,5)", "(2,5)(3,4)", "--degree", "5")
    assert "regular-set sizes none (exhaustive)" in out  # D5 has no regular set


def test_aut_single_edge_is_symmetric():
    _, out = run("aut", "--edges", "[1,2,3,4,5,6]", "--degree", "6")
    assert "order 720" in out


def test_aut_of_orbit_union():
    _, out = run("aut", "--gens", "(1,2,3,4,5)", "--seeds", "[1,2]", "--degree", "5")
    assert "edges 5" in out and "order 10" in out


def test_closure_and_rg():
    _, out = run("closure", "--gens", "(1,2,3,4,5)", "--degree", "5")
    assert "closure order 10" in out and "orbit closed no" in out
    _, out = run("rg", "--gens", "(1,2,3,4,5)", "--degree", "5")
    assert "status NotRelationGroup" in out and "universal" in out
    _, out = run("rg", "--gens", "(1,2,5)(3,4,6)", "(1,4)(2,5)", "--degree", "6")
    assert "status RelationGroup" in out and "witness" in out


def test_console_entry_point(catalog_file):
    proc = subprocess.run([sys.executable, "-m", "relkit.cli", "verify", str(catalog_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "confirmed 2" in proc.stdout and proc.stderr == ""
