import json

from lotcert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_non_decomposable(capsys):
    code, out, _ = run(capsys, "analyze", "--m", "3", "--word", "x1 x3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "decomposable: no; (C1) applies"
    assert lines[1] == "gens: x1 x2 x3"


def test_analyze_decomposable(capsys):
    code, out, _ = run(capsys, "analyze", "--m", "3", "--word", "x3 x1")
    assert code == 0
    assert "decomposable: yes" in out
    assert "u2=x3 u1=x1 k=1" in out
    assert "(C1) does not apply" in out
    assert "rel[0]: x3 x1 x3^-1 x2^-1" in out


def test_certify_and_verify(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "certify", "--m", "3", "--word", "x3 x1", "--out", str(path))
    assert code == 0
    assert out.strip() == "rounds: 1; leaf: one-relator"
    code, out, _ = run(capsys, "verify", "--cert", str(path))
    assert code == 0
    assert out.startswith("accepted: yes")


def test_verify_tampered_exits_3(tmp_path, capsys):
    path = tmp_path / "cert.json"
    run(capsys, "certify", "--m", "3", "--word", "x2", "--out", str(path))
    doc = json.loads(path.read_text())
    doc["final"]["rels"][0] = "x1 x2"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--cert", str(path))
    assert code == 3
    assert "accepted: no" in out


def test_verify_garbage_exits_3(tmp_path, capsys):
    path = tmp_path / "cert.json"
    path.write_text("{ not json")
    code, out, _ = run(capsys, "verify", "--cert", str(path))
    assert code == 3


def test_corollary_ok(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = run(
        capsys, "corollary", "--m", "3", "--word", "x2",
        "--exponents", "2,1", "--out", str(path),
    )
    assert code == 0
    assert "normalized-m: 4" in out
    code, _, _ = run(capsys, "verify", "--cert", str(path))
    assert code == 0


def test_corollary_negative_exits_2(capsys):
    code, _, err = run(capsys, "corollary", "--m", "3", "--word", "x2", "--exponents=-1,1")
    assert code == 2
    assert "unsupported" in err


def test_snf_trace(tmp_path, capsys):
    path = tmp_path / "cert.json"
    run(capsys, "certify", "--m", "3", "--word", "x2", "--out", str(path))
    code, out, _ = run(capsys, "snf", "--cert", str(path))
    assert code == 0
    assert out.splitlines()[0].startswith("initial: factors [1 1]")


def test_random_loop(capsys):
    code, out, _ = run(capsys, "random", "--m", "3", "--max-len", "6",
                       "--count", "10", "--seed", "3")
    assert code == 0
    assert out.startswith("ok: 10")


def test_usage_error_exits_1(capsys):
    code, _, err = run(capsys, "certify", "--m", "3")
    assert code == 1
    assert "error" in err


def test_word_parse_error_exits_1(capsys):
    code, _, err = run(capsys, "analyze", "--m", "3", "--word", "X3")
    assert code == 1


def test_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "verify", "--cert", "/no/such/file.json")
    assert code == 1
