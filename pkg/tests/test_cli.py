import json
import os
import subprocess
import sys

import pytest

from nql.cli import main
from nql.reports import RunReport


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *args):
    code, out, _ = run(capsys, *args, "--format", "json")
    return code, RunReport.from_json(out)


@pytest.mark.parametrize(
    "args, code",
    [
        (["check", "--group", "7", "--basis", "eigen"], 0),
        (["check", "--group", "6", "--basis", "eigen"], 1),
        (["check", "--group", "2x2", "--basis", "eigen"], 0),
        (["check", "--group", "5", "--basis", "perm"], 0),
        (["check", "--group", "6", "--basis", "perm"], 1),
        (["check", "--group", "2", "--multiplicities", "2,1"], 0),
        (["check", "--group", "2", "--basis", "perm", "--multiplicities", "2,1"], 2),
        (["check", "--group", "3", "--multiplicities", "1,1"], 2),
        (["check", "--group", "2y3"], 2),
        (["check", "--group", ""], 2),
        (["check"], 2),
        (["matrix", "--group", "0"], 2),
        (["matrix", "--group", "3", "--format", "xml"], 2),
        (["witness", "--group", "5"], 2),
        (["witness", "--group", "4"], 2),
        (["witness", "--group", "1"], 2),
        (["certify-prime", "--p", "3"], 0),
        (["certify-prime", "--p", "5", "--a", "1,0,0,1,3"], 0),
        (["certify-prime", "--p", "5", "--a", "1,0,0,0,4"], 2),
        (["certify-prime", "--p", "5", "--a", "1,1,1,1,1"], 0),
        (["certify-prime", "--p", "4"], 2),
        (["certify-prime", "--p", "3", "--a", "1,2,0"], 2),
        (["certify-prime", "--p", "3", "--a", "x"], 2),
        (["lemma2", "--dim", "3", "--v1", "101"], 0),
        (["lemma2", "--dim", "3", "--v1", "000"], 2),
        (["lemma2", "--dim", "3", "--v1", "10"], 2),
        (["lemma2", "--dim", "2", "--v1", "12"], 2),
        (["sweep", "--max-order", "7"], 0),
        (["sweep", "--max-order", "0"], 2),
        (["frobnicate"], 2),
    ],
)
def test_exit_codes(capsys, args, code):
    assert run(capsys, *args)[0] == code


def test_usage_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "matrix", "--group", "2x")
    assert code == 2 and out == "" and err


def test_matrix_formats(capsys):
    code, rep = run_json(capsys, "matrix", "--group", "2")
    assert code == 0 and rep.payload_type == "matrix"
    assert rep.payload["entries"] == [[0, 1], [1, 0]]
    assert rep.payload["determinant"] == -1 and rep.payload["prime_factors"] == []
    assert rep.representation == "regular-perm" and rep.group == "2"
    code, out, _ = run(capsys, "matrix", "--group", "2", "--format", "csv")
    assert out.splitlines() == [",X[0]^2,X[0]^1*X[1]^1", "X[0]^2,0,1", "X[0]^1*X[1]^1,1,0"]
    code, out, _ = run(capsys, "matrix", "--group", "1")
    assert "determinant: 1" in out


def test_matrix_z5(capsys):
    code, rep = run_json(capsys, "matrix", "--group", "5")
    assert code == 0 and rep.payload["size"] == 26 and abs(rep.payload["determinant"]) == 1


def test_check_z6_reports_witness(capsys):
    code, rep = run_json(capsys, "check", "--group", "6")
    v = rep.decoded()
    assert code == 1 and v.kind == "degenerate"
    assert v.witness.degree == 6 and v.witness_coefficient.is_zero()


def test_witness_command(capsys):
    code, rep = run_json(capsys, "witness", "--group", "9")
    w = rep.decoded()
    assert w.case == "Ia" and w.degree == 9 and w.weight == [0]
    assert code == (0 if w.vanishes else 1)


def test_certify_prime_payload(capsys):
    code, rep = run_json(capsys, "certify-prime", "--p", "3")
    batch = rep.decoded()
    assert code == 0 and len(batch.certificates) == 4 and all(c.ok for c in batch.certificates)


def test_lemma2_payload(capsys):
    code, rep = run_json(capsys, "lemma2", "--dim", "2", "--v1", "10")
    r = rep.decoded()
    assert (r.even_zero, r.odd_v1) == (2, 2)


def _strip(text):
    d = json.loads(text)
    d.pop("duration_s")
    return json.dumps(d, indent=2)


@pytest.mark.parametrize(
    "args",
    [
        ["matrix", "--group", "4"],
        ["check", "--group", "6"],
        ["check", "--group", "2x2", "--basis", "perm"],
        ["witness", "--group", "2x4"],
        ["certify-prime", "--p", "5"],
        ["lemma2", "--dim", "3", "--v1", "011"],
        ["sweep", "--max-order", "6"],
    ],
)
def test_byte_identical_json(capsys, args):
    a = run(capsys, *args, "--format", "json")[1]
    b = run(capsys, *args, "--format", "json")[1]
    assert _strip(a) == _strip(b)
    # replaying the recorded command reproduces the payload
    rep = RunReport.from_json(a)
    c = run(capsys, *rep.command)[1] if "--format" in rep.command else run(capsys, *rep.command, "--format", "json")[1]
    assert _strip(c) == _strip(a)


def test_thread_cap_does_not_change_output(capsys, monkeypatch):
    monkeypatch.setenv("NQL_THREADS", "1")
    a = run(capsys, "sweep", "--max-order", "6", "--format", "json")[1]
    monkeypatch.setenv("NQL_THREADS", "3")
    b = run(capsys, "sweep", "--max-order", "6", "--format", "json")[1]
    assert _strip(a) == _strip(b)


@pytest.mark.parametrize("bad", ["0", "-2", "many"])
def test_invalid_thread_cap(capsys, monkeypatch, bad):
    monkeypatch.setenv("NQL_THREADS", bad)
    assert run(capsys, "check", "--group", "3")[0] == 2


def test_module_entry_point():
    env = dict(os.environ, NQL_THREADS="1")
    proc = subprocess.run(
        [sys.executable, "-m", "nql", "check", "--group", "2x2"], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0 and "NONDEGENERATE" in proc.stdout
