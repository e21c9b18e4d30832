"""End-to-end command-line tests: subcommands, exit codes, artifacts."""

import json

import pytest

from tpack.cli import main

TRIANGLE = "terminal a\nterminal b\nterminal c\nedge 1 a b\nedge 2 b c\nedge 3 a c\n"
STAR = "terminal x\nterminal y\nterminal z\nvertex c\nedge 1 x c\nedge 2 y c\nedge 3 z c\n"


@pytest.fixture
def tri(tmp_path):
    p = tmp_path / "tri.graph"
    p.write_text(TRIANGLE)
    return str(p)


@pytest.fixture
def star(tmp_path):
    p = tmp_path / "star.graph"
    p.write_text(STAR)
    return str(p)


def test_check_ok(tri, capsys):
    assert main(["check", tri]) == 0
    out = capsys.readouterr().out
    assert "inner Eulerian: yes" in out
    assert out.count("linkable\tyes") == 3


def test_check_parity_failure(star, capsys):
    assert main(["check", star]) == 1
    assert "not inner Eulerian: vertex c has odd degree" in capsys.readouterr().out


def test_lambda(tri, capsys):
    assert main(["lambda", tri]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["a\t2\t2", "b\t2\t2", "c\t2\t2"]


def test_mincut(tri, capsys):
    assert main(["mincut", tri, "a", "b"]) == 0
    out = capsys.readouterr().out
    assert "smallest\tedges=1,3\tside=a" in out
    assert main(["mincut", tri, "a", "a"]) == 2
    assert main(["mincut", tri, "a", "zz"]) == 2


def test_waves(tri, capsys):
    assert main(["waves", tri]) == 0
    assert "a\tcut=1,3\tside=a\tpaths=2" in capsys.readouterr().out


def test_pack_text_and_exit(tri, capsys):
    assert main(["pack", tri]) == 0
    out = capsys.readouterr().out
    assert out.count("path\t") == 3
    assert out.count("cut\t") == 3


def test_pack_rejects_parity(star, capsys):
    assert main(["pack", star]) == 1
    assert "not inner Eulerian" in capsys.readouterr().err


def test_pack_verify_round_trip(tri, tmp_path, capsys):
    assert main(["pack", tri, "--certify"]) == 0
    cert = capsys.readouterr().out
    doc = json.loads(cert)
    assert set(doc) == {"cuts", "paths"}
    cert_file = tmp_path / "cert.json"
    cert_file.write_text(cert)
    assert main(["verify", tri, str(cert_file)]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_verify_tampered(tri, tmp_path, capsys):
    main(["pack", tri, "--certify"])
    doc = json.loads(capsys.readouterr().out)
    doc["cuts"]["a"]["edges"] = [1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify", tri, str(bad)]) == 1
    assert capsys.readouterr().out.strip() == "not-a-cut"


def test_verify_malformed(tri, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["verify", tri, str(bad)]) == 2


def test_mader(star, capsys):
    assert main(["mader", star]) == 0
    out = capsys.readouterr().out
    assert "value\t1" in out
    assert "obstructive\t1" in out
    assert "component\tc\td=3\tobstructive=yes" in out


def test_decompose(tri, capsys):
    assert main(["decompose", tri]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["1", "2", "3"]


def test_fuzz_reproducible(capsys):
    assert main(["fuzz", "--seed", "3", "--count", "4"]) == 0
    first = capsys.readouterr().out
    assert main(["fuzz", "--seed", "3", "--count", "4"]) == 0
    assert capsys.readouterr().out == first
    assert first.count("\n") == 4
    assert "MISMATCH" not in first


def test_dot(tri, capsys):
    assert main(["dot", tri]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph G {")
    assert '"a" [shape=box];' in out
    assert '"a" -- "b" [label="1"];' in out


def test_figures_written(tri, star, tmp_path):
    pack_png = tmp_path / "pack.png"
    mader_png = tmp_path / "mader.png"
    dot_png = tmp_path / "plain.png"
    assert main(["pack", tri, "--figure", str(pack_png)]) == 0
    assert main(["mader", star, "--figure", str(mader_png)]) == 0
    assert main(["dot", tri, "--figure", str(dot_png)]) == 0
    for f in (pack_png, mader_png, dot_png):
        assert f.exists() and f.stat().st_size > 0


def test_input_errors(tmp_path, capsys):
    assert main(["check", str(tmp_path / "missing.graph")]) == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("vertex a\nedge x a b\n")
    assert main(["check", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
