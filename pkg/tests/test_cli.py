from __future__ import annotations

import io
import json
import subprocess
import sys

import jsonschema
import pytest

from buchifield.cli import load_schema, run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None)


def validate(report):
    jsonschema.validate(report, load_schema("run_report"))
    jsonschema.validate(report["outputs"], load_schema(report["subcommand"]))


def test_bound():
    code, rep = invoke("bound", "--n", "2", "--g", "0")
    assert code == 0 and rep["outputs"]["M"] == 240
    validate(rep)


def test_powerful_profile():
    code, rep = invoke("powerful", "x^2*(x-1)^3", "--k", "2")
    assert code == 0
    assert rep["outputs"]["powerful"] is True
    assert [[f.replace(" ", ""), m] for f, m in rep["outputs"]["profile"]] == [["x", 2], ["x-1", 3]]
    validate(rep)


def test_search_int_tags_nontrivial():
    code, rep = invoke("search-int", "--x1", "1..50", "--x2", "1..50", "--min-len", "4")
    assert code == 0
    roots = [s["roots"] for s in rep["outputs"]["nontrivial"]]
    assert [6, 23, 32, 39] in roots
    validate(rep)


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "t^2 - x^2"],
        ["census", "t^2-x^2", "--lambda-range", "-5..5", "--mu", "2"],
        ["locus", '{"n": 2, "coeffs": ["-x^2", "0"]}'],
        ["charp-example", "--p", "3", "--e", "1"],
        ["lemma-linear", "--c", "(x^3+1)/x"],
        ["zeuthen", "--u", "t^2", "--v", "t^3"],
        ["harness", "--n", "2", "--trials", "3"],
        ["bound", "--n", "2..3", "--g", "0..1", "--replay"],
    ],
)
def test_reports_validate(argv):
    code, rep = invoke(*argv)
    assert code == 0
    validate(rep)


def test_sequence_files(tmp_path):
    f = tmp_path / "seq.json"
    f.write_text(json.dumps(["36", "529", "1024", "1521"]))
    code, rep = invoke("sequence", "to-form", str(f), "--n", "2")
    assert code == 0 and rep["outputs"]["coeffs"] == ["-455", "490"]
    validate(rep)
    code, rep = invoke("sequence", "verify", str(f), "--n", "2")
    assert rep["outputs"]["buchi"] is True
    f.write_text(json.dumps(["1", "2", "3"]))
    code, rep = invoke("sequence", "to-form", str(f), "--n", "2")
    assert code == 0 and rep["outputs"]["buchi"] is False


def test_form_file(tmp_path):
    f = tmp_path / "form.json"
    f.write_text(json.dumps({"n": 3, "coeffs": ["x^3", "3*x^2", "3*x"]}))
    code, rep = invoke("classify", str(f))
    assert rep["outputs"]["class"] == "PowerOfLinear"


def test_deterministic_modulo_timing():
    a = invoke("harness", "--n", "2", "--trials", "4", "--seed", "3")[1]
    b = invoke("harness", "--n", "2", "--trials", "4", "--seed", "3")[1]
    a.pop("timing_ms"), b.pop("timing_ms")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["seed"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--n", "1"],
        ["bound"],
        ["powerful", "x^2*(y"],
        ["locus", "t^2+1"],
        ["zeuthen", "--u", "t", "--v", "1"],
        ["sequence", "verify", "/nonexistent.json", "--n", "2"],
        ["nosuch"],
        ["census", "t^2", "--mu", "2", "--lambda-range", "5..1"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    code, rep = invoke(*argv)
    assert code == 1 and rep is None
    assert capsys.readouterr().err


def test_flag_named_in_error(capsys):
    invoke("census", "t^2", "--mu", "x")
    assert "--mu" in capsys.readouterr().err


def test_verification_failure_exit_2(monkeypatch):
    from buchifield import cli
    from buchifield.errors import TheoremViolation

    def boom(*a, **k):
        raise TheoremViolation("forced", {"form": "t^2"})

    monkeypatch.setattr(cli, "theorem_harness", boom)
    code, rep = invoke("harness", "--n", "2", "--trials", "1")
    assert code == 2
    assert rep["outputs"]["witness"] == {"form": "t^2"}
    validate(rep)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "buchifield.cli", "bound", "--n", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["M"] == 4032
