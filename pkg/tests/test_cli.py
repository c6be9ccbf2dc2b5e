"""Command-line surface: exit codes, manifests, determinism."""

import json
import os

from heiszeta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_lemma22(capsys):
    code, out = run(capsys, "verify", "lemma2.2")
    assert code == 0
    assert "result: pass" in out


def test_verify_n2(capsys):
    code, out = run(capsys, "verify", "n2", "--check-partitions")
    assert code == 0
    assert "zeta_n2" in out or "result: pass" in out


def test_enum_small(capsys):
    code, out = run(capsys, "enum", "--n", "1", "--p", "2", "--deg", "3")
    assert code == 0
    assert "t^3: 4" in out
    assert "stability: stable" in out


def test_dirichlet(capsys):
    code, out = run(capsys, "dirichlet", "--n", "1", "--count", "6")
    assert code == 0
    assert "r_5 = 4" in out


def test_abscissa_and_topo(capsys):
    code, out = run(capsys, "abscissa", "--n", "7")
    assert code == 0 and "abscissa = 2" in out
    code, out = run(capsys, "topo", "--n", "1")
    assert code == 0


def test_json_output_deterministic(capsys):
    _, first = run(capsys, "expand-identity", "--n", "3", "--format", "json")
    _, second = run(capsys, "expand-identity", "--n", "3", "--format", "json")
    assert first == second
    data = json.loads(first)
    assert data["ok"] is True
    assert all(c["status"] != "float" for c in data["checks"])


def test_report_cycle(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HEISZETA_CACHE", str(tmp_path))
    code, _ = run(capsys, "abscissa", "--n", "2")
    assert code == 0
    code, out = run(capsys, "report")
    assert code == 0
    assert "0 failure(s)" in out
    # drop a failing manifest into the cache: report must go red
    bad = {"command": "verify stub", "parameters": {}, "fixtures": {},
           "checks": [{"name": "stub", "value": "0", "match": False,
                       "status": "verified", "note": ""}],
           "output": [], "ok": False}
    with open(os.path.join(tmp_path, "reports", "zz-stub.json"), "w") as fh:
        json.dump(bad, fh)
    code, out = run(capsys, "report")
    assert code == 1
    assert "1 failure(s)" in out


def test_report_empty_cache(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HEISZETA_CACHE", str(tmp_path))
    code, out = run(capsys, "report")
    assert code == 0
    assert "0 report(s)" in out
