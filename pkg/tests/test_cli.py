import json

import pytest

from qprseq.attainability import enumerate_attainable
from qprseq.cli import main
from qprseq.exactfield import GF, QQ
from qprseq.matrix import random_symmetric
from qprseq.matrixfile import MatrixFileError, read_matrix, write_matrix
from qprseq.sequences import compute_qpr

from corpora import mat, random_corpus


@pytest.fixture
def sa_file(tmp_path):
    f = tmp_path / "b.txt"
    f.write_text("# witness\nQ 2\n1 1\n1 0\n")
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute(capsys, sa_file):
    code, out, _ = run(capsys, "compute", "--in", sa_file)
    assert code == 0
    assert out.strip() == "pr: 1]11, epr: SA, qpr: SA"


def test_compute_json(capsys, sa_file):
    code, out, _ = run(capsys, "compute", "--in", sa_file, "--json")
    assert json.loads(out) == {"n": 2, "field": "Q", "pr": "1]11", "epr": "SA", "qpr": "SA", "rank": 2}


def test_compute_verbose(capsys, sa_file):
    code, out, _ = run(capsys, "compute", "--in", sa_file, "-v")
    assert "rank: 2" in out and "FAIL" not in out and "[pass]" in out


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--seq", "NSA")
    assert code == 1 and out.strip() == "not attainable: contains NS"
    code, out, _ = run(capsys, "check", "--seq", "asa")
    assert code == 0 and out.strip() == "attainable"
    code, out, _ = run(capsys, "check", "--seq", "AAN", "--field", "F2")
    assert code == 0 and "necessary but not sufficient" in out
    code, _, err = run(capsys, "check", "--seq", "AXN")
    assert code == 2 and "invalid" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2")
    assert out.split() == ["AA", "AN", "NN", "SA", "SN"]
    code, _, _ = run(capsys, "enumerate", "--n", "0")
    assert code == 2


def test_synthesize_then_compute(capsys, tmp_path):
    out_file = tmp_path / "w.txt"
    code, out, _ = run(capsys, "synthesize", "--seq", "ASAN", "--seed", "7", "--out", str(out_file))
    assert code == 0 and out.startswith("target=ASAN seed=7")
    code, out, _ = run(capsys, "compute", "--in", str(out_file))
    assert out.strip().endswith("qpr: ASAN")


def test_synthesize_unattainable(capsys):
    code, _, err = run(capsys, "synthesize", "--seq", "AAS")
    assert code == 1 and "ends in S" in err


def test_synthesize_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("QPR_SEED", "7")
    _, a, _ = run(capsys, "synthesize", "--seq", "ASAN")
    _, b, _ = run(capsys, "synthesize", "--seq", "ASAN", "--seed", "7")
    assert a == b and "seed=7" in a
    monkeypatch.setenv("QPR_SEED", "x")
    code, _, _ = run(capsys, "synthesize", "--seq", "ASAN")
    assert code == 2


@pytest.mark.parametrize("n", range(1, 6))
def test_synthesize_pipe_round_trip(capsys, monkeypatch, n):
    import io
    for s in enumerate_attainable(n):
        code, text, _ = run(capsys, "synthesize", "--seq", s.lower(), "--seed", "3")
        assert code == 0
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        code, out, _ = run(capsys, "compute", "--in", "-", "--json")
        assert json.loads(out)["qpr"] == s


def test_survey(capsys):
    code, out, _ = run(capsys, "survey", "--p", "2", "--n", "2")
    assert code == 0
    rows = dict(line.split()[:2] for line in out.splitlines() if not line.startswith("#"))
    assert rows == {"AN": "1", "NN": "1", "SA": "4", "SN": "2"}
    code, out, _ = run(capsys, "survey", "--p", "2", "--n", "3", "--json")
    assert "AAN" not in json.loads(out)["counts"]
    code, _, _ = run(capsys, "survey", "--p", "2", "--n", "9")
    assert code == 1
    code, _, _ = run(capsys, "survey", "--p", "4", "--n", "2")
    assert code == 2


def test_schur(capsys, tmp_path, sa_file):
    code, out, _ = run(capsys, "schur", "--in", sa_file, "--gamma", "1")
    assert code == 0
    assert read_matrix(out) == mat([[-1]])
    singular = tmp_path / "s.txt"
    singular.write_text("Q 2\n0 1\n1 0\n")
    code, _, err = run(capsys, "schur", "--in", str(singular), "--gamma", "1")
    assert code == 1 and "singular" in err
    code, _, _ = run(capsys, "schur", "--in", sa_file, "--gamma", "x")
    assert code == 2


def test_io_errors(capsys, tmp_path):
    code, _, _ = run(capsys, "compute", "--in", str(tmp_path / "missing.txt"))
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("Q 2\n1 2\n3 4\n")
    code, _, err = run(capsys, "compute", "--in", str(bad))
    assert code == 2 and "(1,2)" in err
    code, _, _ = run(capsys, "nosuchcommand")
    assert code == 2


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--count", "40")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("text", [
    "", "Q\n", "Q x\n", "Z 1\n1\n", "Q 2\n1 1\n", "Q 1\n1 2\n", "F2 1\n1/2\n", "Q 1\n1/0\n",
])
def test_matrix_file_rejects(text):
    with pytest.raises(MatrixFileError):
        read_matrix(text)


def test_matrix_file_round_trip():
    for B in random_corpus(50, fields=(QQ, GF(2), GF(7)), nmax=5, seed=1):
        text = write_matrix(B)
        assert read_matrix(text) == B
        assert write_matrix(read_matrix(text)) == text
    B = mat([["1/2", "-3/7"], ["-3/7", "0"]])
    assert write_matrix(B) == "Q 2\n1/2 -3/7\n-3/7 0\n"
    assert read_matrix(write_matrix(B, ["a comment"])) == B
    assert read_matrix("F3 2\n4 1\n1 0\n") == mat([[1, 1], [1, 0]], GF(3))
