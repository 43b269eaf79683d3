"""Mapping from OWL 2 axioms and expressions to fuzzy DL syntax trees."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .. import diagnostics as diag
from .. import dl
from .syntax import Expr, Literal, OwlAxiom

INTEGER_TYPES = {"xsd:integer", "xsd:int", "xsd:long", "xsd:short", "xsd:byte",
                 "xsd:nonNegativeInteger", "xsd:positiveInteger", "xsd:nonPositiveInteger",
                 "xsd:negativeInteger", "xsd:unsignedInt", "xsd:unsignedLong"}
SUPPORTED_FACETS = {"xsd:minInclusive": "lo", "xsd:maxInclusive": "hi",
                    "minInclusive": "lo", "maxInclusive": "hi"}


class UnsupportedConstruct(ValueError):
    def __init__(self, message: str, location: str = "-"):
        super().__init__(message)
        self.diagnostic = diag.error("UNSUPPORTED_CONSTRUCT", message, location)


def concept(term) -> dl.Node:
    """Class expression -> DL concept."""
    if isinstance(term, str):
        if term == "owl:Thing":
            return dl.Top()
        if term == "owl:Nothing":
            return dl.Bottom()
        return dl.Atomic(term)
    head, args = term.head, term.args
    if head == "ObjectIntersectionOf":
        return dl.And(tuple(concept(a) for a in args))
    if head == "ObjectUnionOf":
        return dl.Or(tuple(concept(a) for a in args))
    if head == "ObjectComplementOf":
        return dl.Not(concept(args[0]))
    if head == "ObjectAllValuesFrom":
        return dl.Forall(role(args[0]), concept(args[1]))
    if head == "ObjectSomeValuesFrom":
        return dl.Exists(role(args[0]), concept(args[1]))
    if head == "ObjectHasValue":
        return dl.Exists(role(args[0]), dl.Nominal(args[1]))
    if head == "ObjectOneOf":
        nominals = tuple(dl.Nominal(o) for o in args)
        return nominals[0] if len(nominals) == 1 else dl.Or(nominals)
    if head in ("ObjectExistsSelf", "ObjectHasSelf"):
        return dl.SelfRestriction(role(args[0]))
    if head == "DataAllValuesFrom":
        return dl.DataForall(data_role(args[0]), datatype(args[1]))
    if head == "DataSomeValuesFrom":
        return dl.DataExists(data_role(args[0]), datatype(args[1]))
    if head == "DataHasValue":
        return dl.DataExists(data_role(args[0]), dl.DataValues((value(args[1]),)))
    if head.startswith("Object") and head.endswith("Cardinality"):
        n, r = args[0], role(args[1])
        filler = concept(args[2]) if len(args) > 2 else dl.Top()
        return _cardinality(head, n, r, filler, dl.AtLeast, dl.AtMost)
    if head.startswith("Data") and head.endswith("Cardinality"):
        n, t = args[0], data_role(args[1])
        filler = datatype(args[2]) if len(args) > 2 else dl.TOP_DATATYPE
        return _cardinality(head, n, t, filler, dl.DataAtLeast, dl.DataAtMost)
    raise UnsupportedConstruct(f"class constructor {head} is not supported")


def _cardinality(head, n, r, filler, at_least, at_most):
    if "Min" in head:
        if n < 1:
            raise UnsupportedConstruct(f"{head} needs n > 0, got {n}")
        return at_least(n, r, filler)
    if "Max" in head:
        return at_most(n, r, filler)
    if n < 1:
        # (>= 0 S.C) is trivially true, so exact 0 is just the upper bound
        return at_most(0, r, filler)
    return dl.And((at_least(n, r, filler), at_most(n, r, filler)))


def role(term) -> dl.Node:
    if isinstance(term, str):
        if term in ("owl:topObjectProperty", "TopObjectProperty"):
            return dl.TopRole()
        if term in ("owl:bottomObjectProperty", "BottomObjectProperty"):
            return dl.BottomRole()
        return dl.RoleName(term)
    if term.head == "ObjectInverseOf":
        return dl.inverse(role(term.args[0]))
    raise UnsupportedConstruct(f"property expression {term.head} is not supported")


def data_role(name: str) -> dl.Node:
    if name in ("owl:topDataProperty", "TopDataProperty"):
        return dl.TopDataRole()
    if name in ("owl:bottomDataProperty", "BottomDataProperty"):
        return dl.BottomDataRole()
    return dl.DataRoleName(name)


def value(lit: Literal) -> Fraction:
    try:
        return lit.number()
    except ValueError:
        raise UnsupportedConstruct(f"non-numeric data value {lit.lexical!r} is not supported") from None


def datatype(term) -> dl.Node:
    if isinstance(term, str):
        return dl.DatatypeName(term)
    if term.head == "DatatypeRestriction":
        base, *facets = term.args
        bounds = {}
        for facet, lit in zip(facets[::2], facets[1::2]):
            if facet not in SUPPORTED_FACETS:
                raise UnsupportedConstruct(f"datatype facet {facet} is not supported "
                                           "(only minInclusive and maxInclusive)")
            bounds[SUPPORTED_FACETS[facet]] = value(lit)
        return dl.CrispRange(bounds.get("lo"), bounds.get("hi"), base in INTEGER_TYPES)
    if term.head == "DataOneOf":
        return dl.DataValues(tuple(value(v) for v in term.args))
    raise UnsupportedConstruct(f"data range {term.head} is not supported")


def to_dl(ax: OwlAxiom) -> tuple:
    """DL axioms (degree 1) expressing ``ax``; raises :class:`UnsupportedConstruct`."""
    try:
        return _to_dl(ax)
    except UnsupportedConstruct as exc:
        if exc.diagnostic.location == "-":
            raise UnsupportedConstruct(str(exc), ax.location) from None
        raise


def _to_dl(ax: OwlAxiom) -> tuple:
    k, a = ax.kind, ax.args
    if k == "ClassAssertion":
        return (dl.ConceptAssertion(a[1], concept(a[0])),)
    if k == "ObjectPropertyAssertion":
        return (dl.RoleAssertion(role(a[0]), a[1], a[2]),)
    if k == "NegativeObjectPropertyAssertion":
        return (dl.NegativeRoleAssertion(role(a[0]), a[1], a[2]),)
    if k == "DataPropertyAssertion":
        return (dl.DataAssertion(data_role(a[0]), a[1], value(a[2])),)
    if k == "NegativeDataPropertyAssertion":
        return (dl.NegativeDataAssertion(data_role(a[0]), a[1], value(a[2])),)
    if k == "SameIndividual":
        return tuple(dl.SameIndividuals(x, y) for x, y in combinations(a, 2))
    if k == "DifferentIndividuals":
        return tuple(dl.DifferentIndividuals(x, y) for x, y in combinations(a, 2))
    if k == "SubClassOf":
        return (dl.ConceptInclusion(concept(a[0]), concept(a[1])),)
    if k == "EquivalentClasses":
        return (dl.ConceptEquivalence(tuple(concept(c) for c in a)),)
    if k == "DisjointClasses":
        return (dl.DisjointConcepts(tuple(concept(c) for c in a)),)
    if k == "DisjointUnion":
        return (dl.DisjointUnion(concept(a[0]), tuple(concept(c) for c in a[1:])),)
    if k == "SubObjectPropertyOf":
        sub = a[0]
        if isinstance(sub, Expr) and sub.head == "ObjectPropertyChain":
            chain = tuple(role(r) for r in sub.args)
        else:
            chain = (role(sub),)
        return (dl.RoleInclusion(chain, role(a[1])),)
    if k == "SubDataPropertyOf":
        return (dl.DataRoleInclusion(data_role(a[0]), data_role(a[1])),)
    if k == "EquivalentObjectProperties":
        return (dl.RoleEquivalence(tuple(role(r) for r in a)),)
    if k == "EquivalentDataProperties":
        return (dl.DataRoleEquivalence(tuple(data_role(t) for t in a)),)
    if k == "ObjectPropertyDomain":
        return (dl.Domain(role(a[0]), concept(a[1])),)
    if k == "ObjectPropertyRange":
        return (dl.Range(role(a[0]), concept(a[1])),)
    if k == "DataPropertyDomain":
        return (dl.Domain(data_role(a[0]), concept(a[1])),)
    if k == "DataPropertyRange":
        return (dl.Range(data_role(a[0]), datatype(a[1])),)
    if k == "InverseObjectProperties":
        return (dl.RoleEquivalence((role(a[0]), dl.inverse(role(a[1])))),)
    if k == "FunctionalObjectProperty":
        return (dl.Functional(role(a[0])),)
    if k == "FunctionalDataProperty":
        return (dl.Functional(data_role(a[0])),)
    if k == "InverseFunctionalObjectProperty":
        return (dl.Functional(dl.inverse(role(a[0]))),)
    if k == "TransitiveObjectProperty":
        return (dl.Transitive(role(a[0])),)
    if k == "DisjointObjectProperties":
        return (dl.DisjointRoles(tuple(role(r) for r in a)),)
    if k == "DisjointDataProperties":
        return (dl.DisjointDataRoles(tuple(data_role(t) for t in a)),)
    if k == "ReflexiveObjectProperty":
        return (dl.Reflexive(role(a[0])),)
    if k == "IrreflexiveObjectProperty":
        return (dl.Irreflexive(role(a[0])),)
    if k == "SymmetricObjectProperty":
        return (dl.Symmetric(role(a[0])),)
    if k == "AsymmetricObjectProperty":
        return (dl.Asymmetric(role(a[0])),)
    raise UnsupportedConstruct(f"axiom {k} is not supported")

