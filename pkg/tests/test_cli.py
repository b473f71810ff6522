import io
import json

import pytest

from cayley_spectra.cli import run


def _run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_spectrum_command(capsys):
    code, doc = _run_json(
        capsys, ["spectrum", "--group", "perm[(1 2),(1 2 3)]", "--classes", "1"]
    )
    assert code == 0
    assert doc["schema"] == "v1"
    assert doc["all_integral"] is True
    values = sorted(
        (e["value"]["rational"], e["multiplicity"]) for e in doc["entries"]
    )
    assert values == [("-3", 1), ("0", 4), ("3", 1)]
    assert doc["oracle"]["passed"] is True


def test_spectrum_irrational_value_serialization(capsys):
    code, doc = _run_json(
        capsys, ["spectrum", "--group", "cyclic(5)", "--classes", "1,4", "--oracle", "off"]
    )
    assert code == 0
    assert doc["all_integral"] is False
    irrational = [e for e in doc["entries"] if "cyclotomic" in e["value"]]
    assert irrational
    golden = irrational[0]["value"]
    assert golden["cyclotomic"]["m"] == 5
    assert golden["degree_divisor"] == 1
    assert len(golden["cyclotomic"]["coeffs"]) == 4
    assert "oracle" not in doc


def test_classes_command(capsys):
    code, doc = _run_json(capsys, ["classes", "--group", "symmetric(4)"])
    assert code == 0
    sizes = sorted(c["size"] for c in doc["classes"])
    assert sizes == [1, 3, 6, 6, 8]
    assert doc["classes"][0]["representative"] == "()"
    assert doc["classes"][0]["members"] == [0]


def test_check_integrality_command(capsys):
    code, doc = _run_json(
        capsys, ["check-integrality", "--group", "cyclic(5)", "--classes", "1,4"]
    )
    assert code == 0
    assert doc["integral"] is False
    assert doc["power_closed"] is False
    assert doc["agree"] is True


def test_check_integrality_sweep(capsys):
    code, doc = _run_json(
        capsys,
        ["check-integrality", "--group", "cyclic(4)", "--connection", "sweep"],
    )
    assert code == 0
    assert doc["subsets"] == 8
    assert doc["disagreements"] == 0
    integral = {tuple(r["classes"]): r["integral"] for r in doc["sweep"]}
    assert integral[(1, 3)] is True
    assert integral[(1,)] is False


def test_check_membership_command(capsys):
    code, doc = _run_json(
        capsys,
        ["check-membership", "--group", "cyclic(5)", "--classes", "1,4",
         "--gamma", "4"],
    )
    assert code == 0
    assert doc["in_subfield"] is True and doc["class_closed"] is True
    code, doc = _run_json(
        capsys,
        ["check-membership", "--group", "cyclic(5)", "--classes", "1,4",
         "--gamma", "rational"],
    )
    assert code == 0
    assert doc["in_subfield"] is False and doc["class_closed"] is False
    assert doc["agree"] is True


def test_character_table_command(capsys):
    code, doc = _run_json(capsys, ["character-table", "--group", "dihedral(4)"])
    assert code == 0
    assert sorted(doc["degrees"]) == [1, 1, 1, 1, 2]
    assert doc["conductor"] == 4
    assert len(doc["rows"]) == 5
    trivial = doc["rows"][0]
    assert all(cell["coeffs"] == trivial[0]["coeffs"] for cell in trivial)
    assert trivial[0]["coeffs"][0] == 1
    assert all(c == 0 for c in trivial[0]["coeffs"][1:])


def test_input_errors_name_the_field(capsys):
    for argv, field in [
        (["spectrum", "--group", "widget(3)", "--classes", "1"], "group"),
        (["spectrum", "--group", "cyclic(4)", "--classes", "11"], "connection"),
        (["spectrum", "--group", "cyclic(4)"], "connection"),
        (["check-membership", "--group", "cyclic(5)", "--classes", "1",
          "--gamma", "5"], "gamma"),
        (["classes"], "group"),
        ([], "command"),
    ]:
        code = run(argv)
        err = capsys.readouterr().err
        assert code == 2
        assert field in err


def test_sweep_limit(capsys):
    code = run(
        ["check-integrality", "--group", "cyclic(12)", "--connection", "sweep",
         "--sweep-limit", "3"]
    )
    err = capsys.readouterr().err
    assert code == 2
    assert "sweep" in err


def test_exit_one_when_a_check_fails(capsys):
    # zero tolerance makes the floating comparison fail on irrational values
    code, doc = _run_json(
        capsys,
        ["spectrum", "--group", "cyclic(5)", "--classes", "1", "--tol", "0"],
    )
    assert code == 1
    assert doc["oracle"]["passed"] is False


def test_job_document_with_flag_override(tmp_path, capsys):
    job = {
        "group": "cyclic(6)",
        "connection": "all-nonidentity",
        "command": "spectrum",
        "oracle": "off",
    }
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    code, doc = _run_json(capsys, ["--input", str(path)])
    assert code == 0
    assert doc["command"] == "spectrum"
    assert "oracle" not in doc
    # flags win over document fields
    code, doc = _run_json(capsys, ["--input", str(path), "--oracle", "on"])
    assert code == 0
    assert doc["oracle"]["passed"] is True


def test_job_document_from_stdin(monkeypatch, capsys):
    job = json.dumps(
        {"group": "cyclic(3)", "connection": {"classes": [1, 2]}, "command": "spectrum"}
    )
    monkeypatch.setattr("sys.stdin", io.StringIO(job))
    code, doc = _run_json(capsys, ["--input", "-"])
    assert code == 0
    assert doc["connection"]["classes"] == [1, 2]


def test_table_output(capsys):
    code = run(
        ["spectrum", "--group", "perm[(1 2),(1 2 3)]", "--classes", "1",
         "--output", "table"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "eigenvalue" in out
    assert "all eigenvalues integral: True" in out


def test_verify_all_small_corpus(tmp_path, capsys):
    job = {"groups": ["cyclic(4)", "symmetric(3)", "quaternion(8)"]}
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(job))
    code, doc = _run_json(capsys, ["verify-all", "--input", str(path)])
    assert code == 0
    assert doc["passed"] is True
    assert doc["totals"]["fail"] == 0
    names = [g["group"] for g in doc["groups"]]
    assert names == ["cyclic(4)", "symmetric(3)", "quaternion(8)"]
    for g in doc["groups"]:
        assert g["checks"]["integrality-equivalence"] == "pass"
        assert g["checks"]["membership-equivalence"] == "pass"


def test_verify_all_is_deterministic(tmp_path, capsys):
    job = {"groups": ["dihedral(4)", "cyclic(6)"]}
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(job))
    first = run(["verify-all", "--input", str(path)])
    out1 = capsys.readouterr().out
    second = run(["verify-all", "--input", str(path)])
    out2 = capsys.readouterr().out
    assert first == second == 0
    assert out1 == out2


def test_verify_all_bundled_corpus_loads(capsys):
    # restrict to a fast subset via sweep limit; full bundled corpus is
    # exercised by the acceptance suite
    code, doc = _run_json(capsys, ["verify-all", "--sweep-limit", "4"])
    assert code == 0
    assert len(doc["groups"]) == 28
    skipped = [g for g in doc["groups"] if g["checks"]["integrality-equivalence"] == "skip"]
    assert skipped
