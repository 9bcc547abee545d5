import io
import json
import subprocess
import sys

import pytest

from symtens.cli import run

from .golden.regen import HERE, load_corpus, transcript

CORPUS = list(load_corpus())


def test_corpus_size():
    assert len(CORPUS) >= 20


@pytest.mark.parametrize("name,argv", CORPUS, ids=[c[0] for c in CORPUS])
def test_golden(name, argv):
    expected = (HERE / "expected" / f"{name}.out").read_text()
    assert transcript(argv) == expected


@pytest.mark.parametrize("name,argv", CORPUS, ids=[c[0] for c in CORPUS])
def test_verified_on_corpus(name, argv):
    code, out, _ = run(argv)
    if code == 0 and "--format" in argv:
        assert json.loads(out)["verified"] is True
    elif code == 0:
        assert "verified = false" not in out


def test_spec_examples():
    assert run(["ek", "--n", "2", "--m", "1", "-k", "1", "--expr", "y1"])[1] == "x[1,1] + x[2,1]\n"
    out = run(["decompose", "--n", "2", "--m", "1", "--expr", "x[1,1]^2 + x[2,1]^2"])[1]
    assert out == "E(1;y1)^2 - 2*E(2;y1)\n"
    code, out, _ = run(["witness", "--n", "2", "--m", "2", "--expr", "z1*z2 - z2*z1", "--format", "json"])
    payload = json.loads(out)
    assert code == 0 and payload["verified"] is True
    assert set(payload) == {"command", "inputs", "result", "verified"}
    assert payload["result"]["delta_theta"] == ["0", "0"] == payload["result"]["e_ab"]


def test_expression_from_stdin():
    code, out, _ = run(["ek", "--n", "2", "--m", "1", "-k", "2", "--expr", "-"], stdin=io.StringIO("y1\n"))
    assert code == 0 and out == "x[1,1]*x[2,1]\n"


def test_usage_errors_exit_one():
    assert run([])[0] == 1
    assert run(["frobnicate"])[0] == 1
    assert run(["ek", "--n", "2", "--m", "1", "--expr", "y1"])[0] == 1  # missing -k
    assert run(["ek", "--n", "2", "--m", "1", "-k", "3", "--expr", "y1"])[0] == 1
    assert run(["ek", "--n", "0", "--m", "1", "-k", "1", "--expr", "y1"])[0] == 1
    assert run(["decompose", "--n", "2", "--m", "1", "--expr", "y1"])[0] == 1


def test_internal_failure_exits_two(monkeypatch):
    import symtens.cli as cli
    from symtens.multisym import DecompositionError

    def broken(p):
        raise DecompositionError("forced")

    monkeypatch.setattr(cli, "decompose", broken)
    code, _, err = run(["decompose", "--n", "2", "--m", "1", "--expr", "x[1,1] + x[2,1]"])
    assert code == 2 and "internal error" in err


def test_json_numbers_are_strings():
    _, out, _ = run(["invariance", "--n", "2", "--m", "1", "--prime", "3", "--trials", "5", "--format", "json"])
    payload = json.loads(out)
    assert payload["result"]["trials"] == "5"
    assert payload["inputs"]["n"] == "2"


def test_seed_changes_trials_but_not_verdict():
    base = ["invariance", "--n", "3", "--m", "2", "--prime", "3", "--trials", "5", "--format", "json"]
    assert json.loads(run(base + ["--seed", "1"])[1])["verified"]
    assert json.loads(run(base + ["--seed", "2"])[1])["verified"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "symtens", "ek", "--n", "2", "--m", "1", "-k", "1", "--expr", "y1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "x[1,1] + x[2,1]\n"
