import io
import subprocess
import sys

import pytest

from fuzzyowl.cli import run
from conftest import FIXTURES

ONT = FIXTURES / "ontologies"
RES = FIXTURES / "restrictions"
FAILING = {"mod_range", "mod_order", "dt_order", "ref_modifier", "ref_datatype", "self_reference",
           "weight_range", "weight_zero", "nominal_zero", "wsum_arity", "wsum_total", "degree_range",
           "degree_zero", "duplicate_annotation", "definition_cycle", "non_gradable_axiom",
           "type_mismatch", "annotation_syntax", "non_simple_role"}


def cli(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", sorted(RES.glob("*.ofn")), ids=lambda p: p.stem)
def test_validate_exit_codes(capsys, path):
    code, out, _ = cli(capsys, "validate", path, "--format", "tsv")
    assert code == (1 if path.stem in FAILING else 0)
    if path.stem in FAILING:
        assert out.split("\t")[0] == path.stem.upper().replace("WEIGHT_ZERO", "WEIGHT_RANGE") \
            .replace("NOMINAL_ZERO", "WEIGHT_RANGE").replace("DEGREE_ZERO", "DEGREE_RANGE")


def test_validate_ok_message(capsys):
    code, out, _ = cli(capsys, "validate", ONT / "chain.ofn")
    assert (code, out) == (0, f"{ONT / 'chain.ofn'}: ok\n")


def test_warnings_and_strict(capsys):
    code, out, _ = cli(capsys, "validate", ONT / "examples.ofn")
    assert code == 0 and "UNSUPPORTED_DOWNSTREAM" in out
    code, _, _ = cli(capsys, "validate", ONT / "examples.ofn", "--strict")
    assert code == 1


def test_unsupported_construct_exit(capsys, tmp_path):
    src = tmp_path / "top.ofn"
    src.write_text("Ontology(t Declaration(NamedIndividual(a)) "
                   "ClassAssertion(DataSomeValuesFrom(owl:topDataProperty xsd:integer) a))")
    code, out, _ = cli(capsys, "validate", src)
    assert code == 3 and "UNSUPPORTED_CONSTRUCT" in out


@pytest.mark.parametrize("argv", [
    ["validate", "/nonexistent/x.ofn"],
    ["translate", RES / "pass_degree.ofn", "--target", "racer"],
    ["frobnicate"],
    ["evaluate", ONT / "examples.ofn", "--model", "/nonexistent.model"],
    ["maximize", ONT / "examples.ofn", "--grid", "/nonexistent.grid"],
])
def test_io_failures(capsys, argv):
    assert cli(capsys, *argv)[0] == 2


def test_parse_failure_reports_location(capsys, tmp_path):
    src = tmp_path / "bad.ofn"
    src.write_text("Ontology(t\n  SubClassOf(A))")
    code, _, err = cli(capsys, "validate", src)
    assert code == 2 and "bad.ofn:2:" in err


@pytest.mark.parametrize("name,target,code", [
    ("with_nominal", "fuzzydl", 3), ("with_nominal", "delorean", 0), ("with_nominal", "generic", 0),
    ("with_weighted_sum", "delorean", 3), ("with_weighted_sum", "fuzzydl", 0),
    ("chain", "fuzzydl", 3), ("chain", "delorean", 0),
    ("examples", "fuzzydl", 3), ("examples", "delorean", 3), ("examples", "generic", 0),
    ("matchmaking", "generic", 0), ("mcdm", "generic", 0), ("mcdm", "delorean", 3),
])
def test_translate_exit_codes(capsys, name, target, code):
    assert cli(capsys, "translate", ONT / f"{name}.ofn", "--target", target)[0] == code


def test_translate_rejects_invalid_input(capsys):
    code, out, err = cli(capsys, "translate", RES / "wsum_total.ofn")
    assert code == 1 and out == "" and "WSUM_TOTAL" in err


def test_gating_message(capsys):
    _, out, err = cli(capsys, "translate", ONT / "chain.ofn", "--target", "fuzzydl")
    assert out == ""
    assert "restricted to the case m = 1" in err and "[TARGET_PARTIAL]" in err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "kb.txt"
    code, out, _ = cli(capsys, "translate", ONT / "with_nominal.ofn", "--out", target)
    assert code == 0 and out == ""
    assert target.read_text().startswith("logic zadeh\n")


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO((ONT / "chain.ofn").read_text()))
    code, out, _ = cli(capsys, "translate", "-", "--target", "delorean")
    assert code == 0 and out.startswith("logic zadeh;")


def test_evaluate(capsys):
    code, out, _ = cli(capsys, "evaluate", ONT / "mcdm.ofn", "--model", ONT / "mcdm.model")
    assert code == 0
    assert "query  0.4959375  alt1:GlobalValue-1" in out
    assert "query      0.13  alt2:GlobalValue-2" in out
    assert out.endswith("model satisfied\n")


def test_evaluate_tsv_is_byte_stable(capsys):
    argv = ["evaluate", ONT / "examples.ofn", "--model", ONT / "examples.model", "--format", "tsv"]
    first = cli(capsys, *argv)[1]
    assert first == cli(capsys, *argv)[1]
    lines = first.splitlines()
    assert "query\t0.5\tpaul:Young" in lines
    assert "query\t0.6\t(paul,q):VeryR" in lines
    assert lines[-1] == "model\tsatisfied"


def test_evaluate_reports_failing_axioms(capsys, tmp_path):
    model = tmp_path / "m.model"
    model.write_text("domain p q i\nindividual paul=p ind=i\nvalues 10\nconcept Tall(p)=0.2\n"
                     "concept A(p)=0\nconcept B(p)=0\nconcept C(p)=0\nrole R(p,q)=0\n")
    code, out, _ = cli(capsys, "evaluate", ONT / "examples.ofn", "--model", model)
    assert code == 0
    assert "fails" in out and out.endswith("model not satisfied\n")


def test_evaluate_trace(capsys):
    _, out, _ = cli(capsys, "evaluate", ONT / "examples.ofn", "--model", ONT / "examples.model", "--trace")
    assert "    VeryC @ p" in out or "VeryC @ p" in out


def test_evaluate_bad_model(capsys, tmp_path):
    model = tmp_path / "m.model"
    model.write_text("domain a\nconcept A(a)=3\n")
    code, _, err = cli(capsys, "evaluate", ONT / "examples.ofn", "--model", model)
    assert code == 2 and "line 2" in err


def test_maximize(capsys):
    code, out, _ = cli(capsys, "maximize", ONT / "mcdm.ofn", "--grid", ONT / "mcdm_a2.grid", "--format", "tsv")
    assert code == 0
    assert out.splitlines() == ["param\tscore\t0.55", "element\talt", "degree\t0.37"]


def test_maximize_text(capsys):
    _, out, _ = cli(capsys, "maximize", ONT / "mcdm.ofn", "--grid", ONT / "mcdm_a1.grid")
    assert out.splitlines() == ["best score=0.95", "at alt", "degree 0.50578125 for GlobalValue-1"]


def test_maximize_needs_a_model(capsys, tmp_path):
    grid = tmp_path / "g.grid"
    grid.write_text("param x=0,1\ntarget A\n")
    code, _, err = cli(capsys, "maximize", ONT / "chain.ofn", "--grid", grid)
    assert code == 2 and "--model" in err


def test_info(capsys):
    code, out, _ = cli(capsys, "info", ONT / "examples.ofn", "--target", "fuzzydl", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0
    assert lines[:4] == ["logic\tzadeh", "abox\t1", "tbox\t1", "rbox\t0"]
    assert "construct\tC11\t1\tno" in lines
    assert "construct\tC1\t6\tyes" in lines


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fuzzyowl", "validate", str(ONT / "with_nominal.ofn")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith(": ok\n")
