from __future__ import annotations

import json
import subprocess
import sys

import pytest

from skeinlab.cli import NAMED, main
from skeinlab.diagrams import is_realizable, parse_gauss, realize
from skeinlab import skein, vinv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_named_diagrams():
    assert skein.conway(realize(parse_gauss(NAMED["trefoil"]))).render() == "z^2+1"
    assert skein.conway(realize(parse_gauss(NAMED["fig8"]))).render() == "-z^2+1"
    assert not is_realizable(parse_gauss(NAMED["vtrefoil"]))
    assert vinv.linking_matrix(parse_gauss(NAMED["hopf+"])).rows == ((0, 1), (1, 0))


def test_invariants_virtual_trefoil(capsys):
    code, out, _ = run(capsys, "invariants", "--gauss", "O1+U2+U1+O2+")
    rep = json.loads(out)
    assert code == 0
    assert rep["odd_writhe"] == 2
    assert rep["realizable"] is False
    assert "jones" not in rep


def test_invariants_pd_trefoil(capsys):
    code, out, _ = run(capsys, "invariants", "--pd", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    rep = json.loads(out)
    assert code == 0
    assert rep["conway"] == "z^2+1"
    assert rep["arf"] == 1
    assert rep["realizable"] is True


def test_invariants_hopf_has_no_arf(capsys):
    code, out, _ = run(capsys, "invariants", "hopf+")
    rep = json.loads(out)
    assert code == 0 and "arf" not in rep
    assert rep["linking_matrix"] == [[0, 1], [1, 0]]


def test_invariants_bad_input(capsys):
    code, _, err = run(capsys, "invariants", "--gauss", "O1U2")
    assert code == 2
    assert "SyntaxError" in err and "O1" in err


def test_equiv_verdicts(capsys):
    assert run(capsys, "equiv", "--moves", "cc", "trefoil", "unknot")[:2] == (0, "EQUIVALENT\n")
    code, out, _ = run(capsys, "equiv", "--moves", "", "trefoil", "unknot")
    assert (code, out) == (3, "DISTINGUISHED(jones)\n")
    code, out, _ = run(capsys, "equiv", "--moves", "fo,fu", "vtrefoil", "unknot")
    assert (code, out) == (0, "EQUIVALENT\n")


def test_equiv_path_output(capsys):
    code, out, _ = run(capsys, "equiv", "--moves", "fo,fu", "--path", "vtrefoil", "unknot")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "EQUIVALENT"
    assert all("rule" in step for step in json.loads(lines[1]))


def test_equiv_unknown(capsys):
    code, out, _ = run(capsys, "equiv", "--moves", "xi", "--depth-cap", "0",
                       "vtrefoil", "O1+U2+U1+O2+O3+U3+")
    assert (code, out) == (4, "UNKNOWN\n")


def test_equiv_errors(capsys):
    assert run(capsys, "equiv", "--moves", "vc,delta", "vtrefoil", "unknot")[0] == 5
    assert run(capsys, "equiv", "--moves", "bogus", "trefoil", "unknot")[0] == 2
    assert run(capsys, "equiv", "trefoil", "O1+")[0] == 2


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--max-arrows", "0")
    assert code == 0 and len(out.splitlines()) == 1
    code, out, _ = run(capsys, "table", "--max-arrows", "1")
    records = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(records) == 3
    assert all(r["odd_writhe"] == 0 for r in records)
    code, out, _ = run(capsys, "table", "--classical", "--max-arrows", "2")
    assert len(out.splitlines()) == 13
    assert run(capsys, "table", "--max-arrows", "2")[1] == run(capsys, "table", "--max-arrows", "2")[1]


def test_table_range(capsys):
    assert run(capsys, "table", "--max-arrows", "9", "--classical")[0] == 2
    assert run(capsys, "table", "--max-arrows", "-1")[0] == 2


def test_check_suites(capsys):
    code, out, _ = run(capsys, "check", "skein", "--seed", "1")
    summary = json.loads(out.splitlines()[-1])
    assert code == 0 and summary["failed"] == 0
    with pytest.raises(SystemExit) as exc:
        main(["check", "bogus"])
    assert exc.value.code == 2


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "skeinlab.cli", "invariants", "trefoil"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["jones"] == "a^-4+a^-12-a^-16"
