"""Command-line interface: exit codes, formats, pipelines."""

import json

import pytest

from lie_thomas.cli import main


def _run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_classify_text(capsys):
    rc, out, _ = _run(capsys, "classify", "--vector", "1,1,3,1",
                      "--params", "1,1,1")
    assert rc == 0
    assert "tag: Case1" in out
    assert "canonical coordinates: (4, 1, 0, 1)" in out


def test_classify_json(capsys):
    rc, out, _ = _run(capsys, "classify", "--vector", "1,1,3,1",
                      "--params", "1,1,1", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["schema"] == "lie-thomas/1"
    assert doc["tag"] == "Case1"
    assert doc["word"] == [["v1", 3.0]]
    assert doc["canonical"] == ["4", "1", "0", "1"]


def test_derive_rows(capsys):
    rc, out, _ = _run(capsys, "derive", "--params", "symbolic",
                      "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["kind"] == "determining-system"
    assert len(doc["rows"]) == 12
    monos = [r["monomial"] for r in doc["rows"]]
    assert monos[0] == "1" and "u_xx" in monos


def test_derive_text_and_latex_agree_on_row_count(capsys):
    _, t, _ = _run(capsys, "derive", "--params", "symbolic")
    _, l, _ = _run(capsys, "derive", "--params", "symbolic",
                   "--format", "latex")
    t_rows = [ln for ln in t.splitlines() if ln.strip().startswith("[")]
    l_rows = [ln for ln in l.splitlines() if ln.strip().startswith("[")]
    assert len(t_rows) == len(l_rows) == 12
    assert any("\\varphi" in ln for ln in l_rows)


def test_tables_json(capsys):
    rc, out, _ = _run(capsys, "tables", "--params", "symbolic",
                      "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert sum(len(row) for row in doc["commutator"]) == 25
    assert sum(len(row) for row in doc["adjoint"]) == 16


def test_reduce_by_vector(capsys):
    rc, out, _ = _run(capsys, "reduce", "--vector", "1,1,3,1",
                      "--params", "1,1,1", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["tag"] == "Case1"
    assert doc["ode"]["kind"] == "fuchs"
    assert doc["ode"]["order"] == 2


def test_reduce_by_case_with_coords(capsys):
    rc, out, _ = _run(capsys, "reduce", "--case", "Case2_2",
                      "--coords", "2,0,1,0", "--params", "1,1,1",
                      "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["ode"]["kind"] == "linear-first-order"


def test_solve_verify_pipeline(tmp_path, capsys):
    rc, out, _ = _run(capsys, "solve", "--case", "Case2_2",
                      "--params", "1,1,1", "--constants", "a1=2",
                      "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    path = tmp_path / "family.json"
    path.write_text(json.dumps(doc))

    rc, out, _ = _run(capsys, "verify", "--family", str(path),
                      "--format", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["max_residual"] < 1e-9
    assert rep["digest"] == doc["digest"]


def test_solve_digest_stable(capsys):
    _, a, _ = _run(capsys, "solve", "--case", "Case2_2", "--params", "1,1,1",
                   "--constants", "a1=2", "--format", "json")
    _, b, _ = _run(capsys, "solve", "--case", "Case2_2", "--params", "1,1,1",
                   "--constants", "a1=2", "--format", "json")
    assert json.loads(a)["digest"] == json.loads(b)["digest"]


def test_verify_tolerance_failure(tmp_path, capsys):
    _, out, _ = _run(capsys, "solve", "--case", "Case2_2", "--params", "1,1,1",
                     "--constants", "a1=2", "--format", "json")
    path = tmp_path / "family.json"
    path.write_text(out)
    rc, _, err = _run(capsys, "verify", "--family", str(path),
                      "--tolerance", "1e-30")
    assert rc == 3
    assert "tolerance" in err


def test_obstruction_case_exits_3(capsys):
    rc, _, err = _run(capsys, "solve", "--case", "Case2_3",
                      "--params", "1,1,1")
    assert rc == 3
    assert "error[" in err


def test_bad_vector_exits_3(capsys):
    rc, _, err = _run(capsys, "classify", "--vector", "1,1,3",
                      "--params", "1,1,1")
    assert rc == 3
    assert "four comma-separated rationals" in err


def test_unknown_flag_exits_2(capsys):
    rc, _, _ = _run(capsys, "classify", "--vector", "1,1,3,1",
                    "--params", "1,1,1", "--bogus")
    assert rc == 2


def test_symbolic_classify_exits_3(capsys):
    rc, _, err = _run(capsys, "classify", "--vector", "1,1,3,1",
                      "--params", "symbolic")
    assert rc == 3
    assert "error[" in err


def test_oracle_command(capsys):
    rc, out, _ = _run(capsys, "oracle", "--params", "1,1,1", "--count", "2",
                      "--seed", "11", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert len(doc["solutions"]) == 2
    for rec in doc["solutions"]:
        assert rec["max_residual"] < 1e-9


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    rc, out, _ = _run(capsys, "classify", "--vector", "0,0,1,0",
                      "--params", "1,1,1", "--format", "json",
                      "--output", str(target))
    assert rc == 0
    assert out == ""
    assert json.loads(target.read_text())["tag"] == "Case2_4"


def test_format_env_default(capsys, monkeypatch):
    monkeypatch.setenv("LIE_THOMAS_FORMAT", "json")
    rc, out, _ = _run(capsys, "classify", "--vector", "1,1,3,1",
                      "--params", "1,1,1")
    assert rc == 0
    assert json.loads(out)["tag"] == "Case1"


def test_solve_csv_grid(capsys):
    rc, out, _ = _run(capsys, "solve", "--case", "Case2_2", "--params", "1,1,1",
                      "--constants", "a1=2", "--format", "csv",
                      "--grid", "0,1,3,0,1,3")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,y,u"
    assert len(lines) == 10
