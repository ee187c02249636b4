import functools
import json
import subprocess
import sys

import pytest

from burchres import cli
from burchres.algebra import ParseError
from burchres.report import FALSIFIED, Report
from burchres.resolution import resolve
from burchres.session import parse_session

GB_TWO = """\
# coefficients 28 and -30
ring p=32003 vars=[x1,x2,x3]
ideal I = [x2*x3 + 28*x3^2, x2^2 - 30*x3^2, x1*x3^2, x1^3*x3]
ideal L = [x2 + 28*x3]
module RL = quotient L
burch-chain I --max-iter 20
"""

SMALL = """\
ring p=32003 vars=[x,y,z]
ideal I = [x^2*y, x*y^2*z, z^3]
ideal N = [x^2, y, z^2]
matrix A = [[x, y]]
module K = cokernel A
module F = free [0, 1]
bi-n I N
witnesses I N
burch-index I
resolve I --module N --steps 3 --emit betti
minors I --module K --steps 6
verify duality I N
fuzz --count 3 --seed 4
"""


def test_parse_valid(tmp_path):
    spec = parse_session("ring p=32003 vars=[x,y,z]\nideal I = [x^2*y, x*y^2*z, z^3]\n")
    assert spec.prime == 32003 and spec.variables == ("x", "y", "z")
    assert [str(g) for g in spec.ideals["I"]] == ["x^2*y", "x*y^2*z", "z^3"]


def test_parse_residues():
    spec = parse_session(GB_TWO)
    I = spec.ideals["I"]
    assert I[0].data[(0, 0, 2)] == 28
    assert I[1].data[(0, 0, 2)] == 31973


def test_round_trip():
    spec = parse_session(SMALL)
    again = parse_session(str(spec))
    assert again == spec
    assert str(again) == str(spec)


@pytest.mark.parametrize("text, where, msg", [
    ("ring p=32003 vars=[x,y]\nideal I = [x^2 + y^3]\n", (2, 12), "term x^2 has degree 2"),
    ("ring p=32001 vars=[x,y]\n", (1, 1), "not prime"),
    ("ring p=32003 vars=[x,x]\n", (1, 1), "unique"),
    ("ideal I = [x]\n", (1, 1), "ring header"),
    ("ring vars=[x,y]\nideal I = [x]\nbi-n I Q\n", (3, 1), "unknown ideal 'Q'"),
    ("ring vars=[x,y]\nideal I = [x]\nideal I = [y]\n", (3, 7), "defined twice"),
    ("ring vars=[x,y]\nideal I = [x y]\n", (2, 14), "implicit multiplication"),
    ("ring vars=[x,y]\nideal I = [x]\nfrobnicate I\n", (3, 1), "unknown statement"),
    ("ring vars=[x,y]\nideal I = [x]\nverify big1 I\n", (3, 1), "needs --module"),
    ("ring vars=[x,y]\nmatrix A = [[x, x*y], [y^2, y]]\n", (2, 12), "inhomogeneous matrix"),
])
def test_parse_errors(text, where, msg):
    with pytest.raises(ParseError) as e:
        parse_session(text)
    assert (e.value.line, e.value.column) == where
    assert msg in e.value.message


def test_prime_override():
    spec = parse_session(GB_TWO, prime=101)
    assert spec.prime == 101
    assert spec.ideals["I"][1].data[(0, 0, 2)] == (-30) % 101


def _run(tmp_path, text, *extra):
    f = tmp_path / "s.txt"
    f.write_text(text)
    out = tmp_path / "out.json"
    code = cli.main([str(f), "--format", "json", "-o", str(out), *extra])
    return code, json.loads(out.read_text())


def test_main_json_schema(tmp_path):
    code, doc = _run(tmp_path, SMALL)
    assert code == 0
    assert doc["schema_version"] == cli.SCHEMA_VERSION
    assert doc["session"]["vars"] == ["x", "y", "z"]
    cmds = [r["command"] for r in doc["results"]]
    assert cmds[0] == "bi-n I N" and len(cmds) == 7
    wit = doc["results"][1]["output"]
    assert wit["realization"] == ["x*y*z"] and wit["realized"] == ["y"]
    rep = doc["results"][5]["reports"][0]
    assert set(rep) == {"subject", "preconditions", "conclusion", "data", "prefix_length", "seed"}


def test_text_and_json_same_data(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text(SMALL)
    assert cli.main([str(f), "--format", "text"]) == 0
    text = capsys.readouterr().out
    code, doc = _run(tmp_path, SMALL)
    assert cli.render_text(doc) == text


def test_deterministic_json(tmp_path):
    a = _run(tmp_path, SMALL, "--seed", "9")[1]
    b = _run(tmp_path, SMALL, "--seed", "9")[1]
    assert json.dumps(a) == json.dumps(b)


def test_extra_command_flag(tmp_path):
    code, doc = _run(tmp_path, "ring vars=[x,y]\nideal I = [x^2*y]\n", "-c", "burch-chain I --max-iter 3")
    assert code == 0 and doc["results"][0]["output"]["status"] in ("STABILIZED", "CAPPED")


def test_exit_usage(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("ring vars=[x,y]\nideal I = [x^2 + y]\n")
    assert cli.main([str(f)]) == 1
    assert "inhomogeneous" in capsys.readouterr().err
    assert cli.main([str(tmp_path / "missing.txt")]) == 1
    assert cli.main(["--format", "yaml", str(f)]) == 1


def test_exit_falsified(tmp_path, monkeypatch):
    def fake(I, res):
        r = Report("DUALPOS")
        r.conclusion = FALSIFIED
        return r

    monkeypatch.setattr(cli.analysis, "verify_dualpos", fake)
    code, _ = _run(tmp_path, "ring vars=[x,y]\nideal I = [x^2*y]\nideal M = [x, y]\nverify dualpos I --module M --steps 2\n")
    assert code == 2


def test_exit_resource_cap(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "resolve", functools.partial(resolve, rank_cap=20))
    text = ("ring vars=[x,y,z,w]\nideal I = [x*z, y*z, z*w, x*w]\nideal J = [x^2*y^2, z^3, y*w]\n"
            "resolve I --module J --steps 6\n")
    code, doc = _run(tmp_path, text)
    assert code == 3
    assert doc["results"][0]["error"]["kind"] == "resource-cap"


def test_console_script(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("ring vars=[x1,x2,y]\nideal I = [x1*y, x2*y, y^3]\nburch-chain I --max-iter 20\n")
    out = subprocess.run([sys.executable, "-m", "burchres.cli", str(f), "--format", "json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    data = json.loads(out.stdout)["results"][0]["output"]
    assert data["gb"] == 3 and data["bd"] == 1


def test_verify_big2_and_minors(tmp_path):
    text = ("ring vars=[x,y,z,w]\nideal I = [x*z, y*z, z*w, x*w]\nideal J = [x^2*y^2, z^3, y*w]\n"
            "module RJ = quotient J\nverify big2 I --module J --steps 6\n"
            "resolve I --module J --steps 3 --emit minors\n")
    code, doc = _run(tmp_path, text)
    assert code == 0
    assert doc["results"][0]["reports"][0]["conclusion"] == "VERIFIED"
    rows = doc["results"][1]["output"]["minors"]
    assert set(rows[0]["entry_ideal"]) == {"z^3", "y*w", "x^2*y^2"}
    assert set(rows[2]["entry_ideal"]) == {"x", "y", "z", "w"}
    assert sum(rows[1]["column_ideals"].values()) == rows[1]["rank"]
