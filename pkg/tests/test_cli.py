import io
import json
import subprocess
import sys

import pytest

from epswb.cli import main


def run(*argv, env=None, monkeypatch=None):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv,expected", [
    (["eval", "1+w"], "w"),
    (["eval", "w^e(3)"], "e(3)"),
    (["cmp", "e(0)", "e(0)*2"], "LT"),
    (["ep", "e(1)*2+w^(e(0)+1)"], "{e(0), e(1)}"),
    (["subst", "e(1)*2+1", "e(1)", "e(0)"], "e(0)*2+1"),
    (["inM", "e(1)+e(0)", "e(1)", "e(0)"], "False"),
    (["m", "w^w+1"], "w^w+1"),
    (["wilken", "w^(w^2)", "2"], "True"),
    (["wilken", "w^(w^2)", "3"], "False"),
])
def test_examples(argv, expected):
    code, out = run(*argv)
    assert code == 0 and out.strip() == expected


def test_m_and_le1():
    code, out = run("m", "e(w^w)")
    assert code == 0 and out.strip() == "e(w^w)*2+w (certified)"
    code, out = run("le1", "e(w)", "e(w)*2+1")
    assert code == 0 and out.startswith("True")
    code, out = run("le1", "e(w)", "e(w)*2+2")
    assert code == 0 and out.startswith("False")


def test_eta_cover_fundseq():
    code, out = run("eta", "w^(w+1)*2+3")
    assert code == 0 and "eta = " in out
    code, out = run("cover", "e(0)*2+w", "--alpha", "e(0)")
    assert code == 0 and "below eta+1: True" in out and "D = " in out
    code, out = run("fundseq", "w^(e(0)+w)", "e(0)", "--indices", "1,2")
    assert code == 0 and "l[1] = " in out and "l[2] = " in out


def test_a_member_and_class2():
    code, out = run("a-member", "e(w)", "e(w^2)*2", "e(w^2)")
    assert code == 0 and out.startswith("True")
    code, out = run("class2", "e(w)")
    assert code == 0 and out.startswith("False")


def test_exit_codes():
    assert run("le1", "e(w^2)", "e(w^2)*2+3", "--fuel", "1")[0] == 2
    assert run("eval", "w+")[0] == 1
    assert run("bogus")[0] == 1
    assert run("verify", "nope")[0] == 1
    assert run("le1", "e(1)", "e(3)", "--fuel", "0")[0] == 1
    assert run("eval", "e(e(e(0)))", "--max-eps-depth", "2")[0] == 1


def test_env_fuel(monkeypatch):
    monkeypatch.setenv("EPSWB_FUEL", "1")
    assert run("le1", "e(w^2)", "e(w^2)*2+3")[0] == 2
    assert run("le1", "e(w^2)", "e(w^2)*2+3", "--fuel", "5000")[0] == 0
    monkeypatch.setenv("EPSWB_FUEL", "many")
    assert run("eval", "1")[0] == 1


def test_json_deterministic():
    argv = ["le1", "e(w^w)", "e(w^w)*2+w", "--json"]
    a, b = run(*argv), run(*argv)
    assert a == b and a[0] == 0
    doc = json.loads(a[1])
    assert doc["schema_version"] == 1 and doc["value"] == "True"
    assert doc["exactness"] == "certified"


def test_verify_json():
    code, out = run("verify", "a-eq-g", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["failed"] == 0 and doc["suite"] == "a-eq-g"
    code2, out2 = run("verify", "a-eq-g", "--json")
    assert out2 == out


def test_module_entry():
    p = subprocess.run([sys.executable, "-m", "epswb", "eval", "w+1+w"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "w*2"
