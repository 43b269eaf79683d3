from fractions import Fraction as F

import pytest

from fuzzyowl import dl
from fuzzyowl.kb import build_kb, crisp_multiset, definition_cycle_check, non_simple_roles
from fuzzyowl.logic import Family, MembershipShape, ModifierDef
from fuzzyowl.owl import parse_document
from conftest import FIXTURES

RESTRICTIONS = FIXTURES / "restrictions"
ALL_DOCUMENTS = sorted(FIXTURES.glob("*/*.ofn"))

# failing fixture -> the only diagnostic code it may produce
FAILING = {
    "mod_range": "MOD_RANGE",
    "mod_order": "MOD_ORDER",
    "mod_b0_iff_a1": "MOD_B0_IFF_A1",
    "mod_b1_iff_c1": "MOD_B1_IFF_C1",
    "dt_order": "DT_ORDER",
    "ref_modifier": "REF_MODIFIER",
    "ref_datatype": "REF_DATATYPE",
    "self_reference": "SELF_REFERENCE",
    "weight_range": "WEIGHT_RANGE",
    "weight_zero": "WEIGHT_RANGE",
    "nominal_zero": "WEIGHT_RANGE",
    "wsum_arity": "WSUM_ARITY",
    "wsum_total": "WSUM_TOTAL",
    "degree_range": "DEGREE_RANGE",
    "degree_zero": "DEGREE_RANGE",
    "duplicate_annotation": "DUPLICATE_ANNOTATION",
    "definition_cycle": "DEFINITION_CYCLE",
    "non_gradable_axiom": "NON_GRADABLE_AXIOM",
    "type_mismatch": "TYPE_MISMATCH",
    "annotation_syntax": "ANNOTATION_SYNTAX",
    "non_simple_role": "NON_SIMPLE_ROLE",
}
PASSING = sorted(p.stem for p in RESTRICTIONS.glob("pass_*.ofn"))


def build(path):
    return build_kb(parse_document(path.read_text()))


def build_text(text):
    return build_kb(parse_document(text))


@pytest.mark.parametrize("name,code", sorted(FAILING.items()))
def test_failing_fixture(name, code):
    _, diags = build(RESTRICTIONS / f"{name}.ofn")
    assert [d.code for d in diags] == [code]


@pytest.mark.parametrize("name", PASSING)
def test_passing_fixture(name):
    _, diags = build(RESTRICTIONS / f"{name}.ofn")
    assert diags == []


def test_every_fixture_is_classified():
    names = {p.stem for p in RESTRICTIONS.glob("*.ofn")}
    assert names == set(FAILING) | set(PASSING)


def test_iff_clauses_are_informational():
    _, diags = build(RESTRICTIONS / "mod_b0_iff_a1.ofn")
    assert [d.severity for d in diags] == ["info"]


def test_diagnostic_tsv_shape():
    _, diags = build(RESTRICTIONS / "wsum_total.ofn")
    code, severity, location, message = diags[0].tsv().split("\t")
    assert (code, severity, location) == ("WSUM_TOTAL", "error", "5:3")
    assert "1.1" in message


# -- building ------------------------------------------------------------------------

def test_examples_kb():
    kb, diags = build(FIXTURES / "ontologies" / "examples.ofn")
    assert [d.code for d in diags] == ["UNSUPPORTED_DOWNSTREAM"]
    assert kb.logic is Family.ZADEH
    assert kb.modifiers["very"] == ModifierDef.linear(F(4, 5))
    assert kb.datatypes["YoungAge"] == MembershipShape.left(0, 200, 10, 30)
    assert kb.datatypes["VeryYoungAge"] == dl.ModifiedDatatype("very", dl.DatatypeName("YoungAge"))
    assert kb.concepts["VeryC"] == dl.Modified("very", dl.Atomic("C"))
    assert kb.concepts["Weight0.8C"] == dl.Weighted(F(4, 5), dl.Atomic("C"))
    assert kb.concepts["Sum08Aplus02B"] == dl.WeightedSum(((F(4, 5), dl.Atomic("A")), (F(1, 5), dl.Atomic("B"))))
    assert kb.concepts["ind075"] == dl.Nominal("ind", F(3, 4))
    assert kb.roles["VeryR"] == dl.ModifiedRole("very", dl.RoleName("R"))
    assert dl.ConceptAssertion("paul", dl.Atomic("Tall"), F(1, 2)) in kb.abox


def test_datatype_range_defaults_to_extreme_breakpoints():
    kb, diags = build_text('Ontology(t Datatype(D Annotation(fuzzyLabel <fuzzyOwl2 fuzzyType="datatype">'
                           '<Datatype type="triangular" a="1" b="2" c="4" /></fuzzyOwl2>)))')
    assert not diags
    assert kb.datatypes["D"] == MembershipShape.triangular(1, 4, 1, 2, 4)


def test_default_logic_and_degrees_without_annotations():
    kb, diags = build_text("Ontology(t Declaration(Class(A)) Declaration(Class(B)) SubClassOf(A B))")
    assert not diags
    assert kb.logic is Family.ZADEH
    assert all(ax.degree == 1 for ax in kb.axioms if ax.gradable)


def test_boxes():
    kb, _ = build(FIXTURES / "ontologies" / "chain.ofn")
    assert kb.abox == () and kb.tbox == ()
    assert len(kb.rbox) == 2
    assert kb.rbox[0].degree == F(3, 4)


def test_domain_is_a_reduction():
    kb, _ = build_text("Ontology(t Declaration(ObjectProperty(R)) Declaration(Class(C)) "
                       "ObjectPropertyDomain(R C))")
    (ax,) = kb.axioms
    assert dl.render(ax.reduction()) == "⟨∃R.⊤ ⊑ C ≥ 1⟩"


@pytest.mark.parametrize("path", ALL_DOCUMENTS, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_build_is_deterministic(path):
    text = path.read_text()
    kb1, d1 = build_kb(parse_document(text))
    kb2, d2 = build_kb(parse_document(text))
    assert kb1 == kb2
    assert [d.tsv() for d in d1] == [d.tsv() for d in d2]


@pytest.mark.parametrize("path", ALL_DOCUMENTS, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_stripping_labels_keeps_crisp_axioms(path):
    doc = parse_document(path.read_text())
    kb, _ = build_kb(doc)
    plain, _ = build_kb(doc.without_fuzzy_labels())
    assert crisp_multiset(plain) == crisp_multiset(kb)
    assert all(ax.degree == 1 for ax in plain.axioms if ax.gradable)
    assert plain.logic is Family.ZADEH


def test_cycle_detection_reports_each_cycle_once():
    kb, _ = build(RESTRICTIONS / "definition_cycle.ofn")
    assert definition_cycle_check(kb) == [["A", "B"]]


def test_non_simple_roles_close_upwards():
    kb, _ = build(RESTRICTIONS / "non_simple_role.ofn")
    assert non_simple_roles(kb) == {"R", "S"}


def test_chain_makes_role_non_simple():
    kb, diags = build(FIXTURES / "ontologies" / "chain.ofn")
    assert non_simple_roles(kb) == {"hasUncle"}
    assert not diags


def test_undeclared_names_warn():
    _, diags = build_text("Ontology(t SubClassOf(A B))")
    assert [d.code for d in diags] == ["UNDECLARED_NAME", "UNDECLARED_NAME"]
    assert not any(d.is_error for d in diags)
