import json

from envsos.cli import main
from envsos.lie import builtin, to_json_dict


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--algebra", "su2", "--expr", "x2*x1")
    assert code == 0
    assert json.loads(out)["normal_form"] == "-x3 + x1*x2"


def test_normalize_canonical_element(capsys):
    code, out, _ = run(capsys, "normalize", "--algebra", "su2",
                       "--expr", "1 - x1^2 - x2^2 - x3^2")
    assert code == 0
    assert json.loads(out)["normal_form"] == "1 - x1^2 - x2^2 - x3^2"


def test_normalize_syntax_error(capsys):
    code, _, err = run(capsys, "normalize", "--algebra", "su2", "--expr", "x1**")
    assert code == 2
    assert "position" in err


def test_scan_with_alias(capsys):
    code, out, _ = run(capsys, "scan", "--algebra", "su2",
                       "--exprs", "1", "2 - H", "--alias", "H=-i*x1", "--lmax", "3")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["members"] == ["0", "1/2", "1", "3/2", "2"]


def test_scan_trivial(capsys):
    code, out, _ = run(capsys, "scan", "--algebra", "su2", "--exprs", "1", "--lmax", "2")
    assert code == 0
    data = json.loads(out)
    assert data["members"] == data["window"]


def test_scan_non_hermitean(capsys):
    code, _, err = run(capsys, "scan", "--algebra", "su2", "--exprs", "1", "x1", "--lmax", "1")
    assert code == 2


def test_sos_certificate_and_verify(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "sos", "--algebra", "su2",
                     "--expr", "1 - x1^2 - x2^2 - x3^2", "--degree", "2",
                     "--out", str(cert))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--certificate", str(cert))
    assert code == 0
    assert json.loads(out)["valid"] is True

    data = json.loads(cert.read_text())
    data["blocks"][0]["gram"][0][0] = "2"
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--certificate", str(tampered))
    assert code == 1

    bad = tmp_path / "bad.json"
    bad.write_text("not json at all")
    code, _, _ = run(capsys, "verify", "--certificate", str(bad))
    assert code == 2


def test_sos_infeasible(capsys):
    code, out, _ = run(capsys, "sos", "--algebra", "su2", "--expr", "-1", "--degree", "0")
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "numeric-infeasible-evidence"


def test_theorem_found_and_exhausted(tmp_path, capsys):
    inst = {
        "algebra": "su2",
        "c": "(1 - x1^2 - x2^2 - x3^2)^2",
        "f": ["1"],
        "epsilon": "1",
        "n_max": 2,
        "d_max": 8,
        "l_max": "3",
        "solver": {"seed": 7},
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst))
    code, out, _ = run(capsys, "theorem", "--instance", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "found"
    assert data["attempts"][-1]["n"] == 0

    code, out, _ = run(capsys, "theorem", "--instance", str(path),
                       "--nmax", "0", "--dmax", "2")
    assert code == 1
    assert json.loads(out)["status"] == "exhausted"


def test_theorem_noncentral(tmp_path, capsys):
    inst = {
        "algebra": "affine_line",
        "c": "(1 - x1^2 - x2^2)^2",
        "f": ["1"],
        "epsilon": "1/2",
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst))
    code, _, err = run(capsys, "theorem", "--instance", str(path))
    assert code == 2
    assert "central" in err


def test_theorem_algebra_file(tmp_path, capsys):
    algebra_path = tmp_path / "su2.json"
    algebra_path.write_text(json.dumps(to_json_dict(builtin("su2"))))
    inst = {
        "algebra": str(algebra_path),
        "c": "(1 - x1^2 - x2^2 - x3^2)^2",
        "f": ["1"],
        "epsilon": "1",
        "n_max": 0,
        "d_max": 4,
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst))
    code, out, _ = run(capsys, "theorem", "--instance", str(path))
    assert code == 0


def test_audit_pass(capsys):
    code, out, _ = run(capsys, "audit", "--algebra", "su2", "--spins", "1/2+1")
    assert code == 0
    data = json.loads(out)
    assert data["cleared_commutator"]["status"] == "pass"
    assert data["contexts"][0]["relations"]["r8"]["status"] == "pass"


def test_audit_corrupted_constants(tmp_path, capsys):
    bad = {
        "dim": 3,
        "names": ["x1", "x2", "x3"],
        "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 3, "coeff": "1"}, {"k": 1, "coeff": "1"}]},
            {"i": 2, "j": 3, "terms": [{"k": 1, "coeff": "1"}]},
            {"i": 3, "j": 1, "terms": [{"k": 2, "coeff": "1"}]},
        ],
    }
    path = tmp_path / "bad_algebra.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "audit", "--algebra", str(path))
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "fail"
    assert "residual" in data


def test_byte_identical_outputs(tmp_path, capsys):
    inst = {
        "algebra": "su2",
        "c": "(1 - x1^2 - x2^2 - x3^2)^2",
        "f": ["1"],
        "epsilon": "1",
        "n_max": 1,
        "d_max": 4,
        "solver": {"seed": 3},
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst))
    out1 = tmp_path / "t1.json"
    out2 = tmp_path / "t2.json"
    assert run(capsys, "theorem", "--instance", str(path), "--out", str(out1))[0] == 0
    assert run(capsys, "theorem", "--instance", str(path), "--out", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
