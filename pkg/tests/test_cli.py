from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hereditary_silting.cli import EX_DATAERR, EX_USAGE, run
from hereditary_silting.dercat import GradedComplex, PerfectComplex
from hereditary_silting.kronrep import KronRep, P, Q
from hereditary_silting.specz import Filtration

DATA = Path(__file__).parent / "data"
EXAMPLE = str(DATA / "example_chain.json")


def call(argv, stdin=None, monkeypatch=None):
    out, err = [], []
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(stdin) if not isinstance(stdin, str) else stdin))
    code = run(argv, out.append, err.append)
    text = "".join(out)
    return code, (json.loads(text) if text else None), "".join(err)


def test_build_silting_example():
    code, doc, err = call(["chain", "build-silting", "--file", EXAMPLE])
    assert code == 0 and err.startswith("T = ")
    want = json.loads((DATA / "example_chain_expected.json").read_text())
    assert GradedComplex.from_json(doc) == GradedComplex.from_json(want["silting"])


def test_build_cosilting_and_dualize_agree(tmp_path):
    _, c, _ = call(["chain", "build-cosilting", "--file", EXAMPLE])
    _, t, _ = call(["chain", "build-silting", "--file", EXAMPLE])
    path = tmp_path / "t.json"
    path.write_text(json.dumps(t))
    code, d, _ = call(["dualize", "--file", str(path)])
    assert code == 0
    assert GradedComplex.from_json(d) == GradedComplex.from_json(c)


def test_validate_and_to_filtration():
    code, rep, _ = call(["chain", "validate", "--file", EXAMPLE])
    assert code == 0 and rep["valid"]
    code, doc, _ = call(["chain", "to-filtration", "--file", EXAMPLE])
    assert code == 0
    f = Filtration.from_json(doc["filtration"])
    assert f.to_json() == doc["filtration"]


def test_invalid_chain_exits_65(monkeypatch):
    code, rep, err = call(["chain", "validate"], {"l": 0, "chain": {"kind": "list", "sets": [[3], [2, 3], []]}},
                          monkeypatch)
    assert code == EX_DATAERR and rep["valid"] is False
    code, _, err = call(["chain", "build-silting"], {"l": 0, "chain": {"kind": "list", "sets": [[3], [2, 3], []]}},
                        monkeypatch)
    assert code == EX_DATAERR and "invalid" in err


@pytest.mark.parametrize("stdin", ["not json", "[1, 2]", '{"x": 1}'])
def test_bad_input_exits_65(stdin, monkeypatch):
    code, _, err = call(["chain", "validate"], stdin, monkeypatch)
    assert code == EX_DATAERR and err.startswith("hsilt: invalid input")


@pytest.mark.parametrize("argv", [[], ["bogus"], ["kron", "quasisimples", "--q", "6"], ["verify", "nope"],
                                  ["chain"], ["report", "everything"]])
def test_usage_errors_exit_64(argv):
    code, _, err = call(argv)
    assert code == EX_USAGE and "usage" in err


def test_quasisimples():
    code, doc, err = call(["kron", "quasisimples", "--q", "3"])
    assert code == 0 and len(doc) == 4
    for item in doc:
        assert KronRep.from_json(item["module"]).dim == (1, 1)


def test_kron_hom_ext_tau_classify(monkeypatch):
    p0, p1 = P(0).to_json(2), P(1).to_json(2)
    assert call(["kron", "hom"], {"m": p0, "n": p1}, monkeypatch)[1]["dim"] == 2
    assert call(["kron", "ext"], {"m": p1, "n": p0}, monkeypatch)[1]["dim"] == 0
    assert call(["kron", "ext"], {"m": Q(0).to_json(2), "n": p0}, monkeypatch)[1]["dim"] == 2
    _, t, _ = call(["kron", "tau"], {"m": P(2).to_json(2)}, monkeypatch)
    assert KronRep.from_json(t).dim == P(0).dim()
    _, t, _ = call(["kron", "tau", "--inverse"], {"m": P(0).to_json(2)}, monkeypatch)
    assert KronRep.from_json(t).dim == P(2).dim()
    m = (P(1).module(2) + P(1).module(2)).to_json()
    _, summ, err = call(["kron", "classify"], {"m": m}, monkeypatch)
    assert summ == [{"summand": p1, "name": "P1", "multiplicity": 2, "class": summ[0]["class"]}]
    assert "2xP1" in err


def test_kron_build_and_enumerate(monkeypatch):
    code, doc, _ = call(["kron", "build"], {"hrs": 1}, monkeypatch)
    assert code == 0
    assert GradedComplex.from_json(doc["silting"]).degrees() == [-1]
    assert GradedComplex.from_json(doc["cosilting"]).degrees() == [1]
    code, doc, err = call(["kron", "enumerate-compact-silting"])
    assert code == 0 and len(doc) == 33 and err.startswith("33")
    code, _, err = call(["kron", "build"], {"jumps": [{"degree": 0, "epi": {"epi": "zero"}}]}, monkeypatch)
    assert code == EX_DATAERR
    code, _, err = call(["kron", "build"], {"jumps": [{"degree": 0, "epi": "zero"}]}, monkeypatch)
    assert code == EX_DATAERR


def test_tstructure_member_truncate(monkeypatch):
    ex = json.loads(Path(EXAMPLE).read_text())
    x = {"entries": {"0": {"fg": {"rank": 0, "torsion": [6]}, "atoms": []}}}
    code, doc, _ = call(["tstructure", "member"], {"params": ex, "x": x}, monkeypatch)
    assert code == 0 and doc == {"aisle": True, "coaisle": False}
    code, doc, _ = call(["tstructure", "truncate"], {"params": ex, "x": x}, monkeypatch)
    assert code == 0
    u, v = GradedComplex.from_json(doc["u"]), GradedComplex.from_json(doc["v"])
    assert doc["u_in_aisle"] and doc["v_in_coaisle"]
    assert u.to_json() == doc["u"] and v.to_json() == doc["v"]
    code, _, _ = call(["tstructure", "truncate"], {"params": {"hrs": 0}, "x": x}, monkeypatch)
    assert code == EX_DATAERR


def test_tstructure_member_kronecker(monkeypatch):
    x = {"ring": "kronecker", "entries": {"0": {"q": 2, "fd": [{"label": "P", "i": 0, "mult": 1}], "atoms": []}}}
    code, doc, _ = call(["tstructure", "member"], {"params": {"hrs": 0}, "x": x}, monkeypatch)
    assert code == 0 and doc["coaisle"] is True
    code, doc, _ = call(["tstructure", "member"], {"params": {"hrs": 1}, "x": x}, monkeypatch)
    assert doc["coaisle"] is False


def test_tstructure_check(monkeypatch):
    code, rep, err = call(["tstructure", "check", "--n", "20"], {"params": json.loads(Path(EXAMPLE).read_text())},
                          monkeypatch)
    assert code == 0 and rep["status"] == "pass"
    code, rep, _ = call(["tstructure", "check"], {"params": {"hrs": 0}}, monkeypatch)
    assert code == 0 and rep["counts"]["fail"] == 0


def test_verify_and_seed_env(monkeypatch):
    code, rep, err = call(["verify", "hom-oracle", "--seed", "7"])
    assert code == 0 and rep["status"] == "pass" and rep["counts"]["pass"] == 500
    monkeypatch.setenv("HSILT_SEED", "3")
    _, a, _ = call(["verify", "plus-duality", "--full"])
    _, b, _ = call(["verify", "plus-duality", "--seed", "3", "--full"])
    assert a == b
    monkeypatch.setenv("HSILT_SEED", "x")
    assert call(["verify", "plus-duality"])[0] == EX_USAGE


def test_report_coverage():
    code, doc, _ = call(["report", "coverage"])
    assert code == 0 and set(doc) == {"Z", "kronecker"}


def test_dualize_perfect(monkeypatch):
    x = {"ranks": {"0": 1, "1": 1}, "diffs": {"0": [[3]]}}
    code, doc, _ = call(["dualize", "--star"], x, monkeypatch)
    assert code == 0
    d = PerfectComplex.from_json(doc)
    assert dict(d.ranks) == {-1: 1, 0: 1}


def test_undualizable_exits_65(monkeypatch):
    x = {"ring": "kronecker", "entries": {"0": {"q": 2, "fd": [], "atoms": [{"atom": "generic", "mult": 1}]}}}
    assert call(["dualize"], x, monkeypatch)[0] == EX_DATAERR


def test_output_is_deterministic_and_module_runs():
    cmd = [sys.executable, "-m", "hereditary_silting", "chain", "build-cosilting", "--file", EXAMPLE]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and a.stdout
    bad = subprocess.run([sys.executable, "-m", "hereditary_silting", "nope"], capture_output=True)
    assert bad.returncode == EX_USAGE
