"""Building a fuzzy knowledge base from an annotated OWL document."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import networkx as nx

from . import annotations as ann
from . import diagnostics as diag
from . import dl
from .logic import Family, MembershipShape, ModifierDef
from .owl.mapping import UnsupportedConstruct, datatype as owl_datatype, to_dl
from .owl.syntax import OwlDocument

DEFAULT_LOGIC = Family.ZADEH

_SHAPES = {"leftshoulder": "left", "rightshoulder": "right",
           "triangular": "triangular", "trapezoidal": "trapezoidal"}

# fuzzyType -> entity kinds it may annotate
_DOMAIN = {
    "modifier": {"Datatype"},
    "datatype": {"Datatype"},
    "concept": {"Class"},
    "role": {"ObjectProperty", "DataProperty"},
}


def _frozen(mapping: dict) -> Mapping:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True, eq=False)
class FuzzyKB:
    logic: Family = DEFAULT_LOGIC
    modifiers: Mapping = field(default_factory=lambda: _frozen({}))
    datatypes: Mapping = field(default_factory=lambda: _frozen({}))
    concepts: Mapping = field(default_factory=lambda: _frozen({}))
    roles: Mapping = field(default_factory=lambda: _frozen({}))
    axioms: tuple = ()
    locations: tuple = ()
    declarations: Mapping = field(default_factory=lambda: _frozen({}))

    @property
    def abox(self) -> tuple:
        return tuple(a for a in self.axioms if a.box == "abox")

    @property
    def tbox(self) -> tuple:
        return tuple(a for a in self.axioms if a.box == "tbox")

    @property
    def rbox(self) -> tuple:
        return tuple(a for a in self.axioms if a.box == "rbox")

    def declared(self, kind: str) -> frozenset:
        return self.declarations.get(kind, frozenset())

    def fuzzy_datatypes(self) -> set:
        return {name for name, d in self.datatypes.items()
                if isinstance(d, (MembershipShape, dl.ModifiedDatatype))}

    def __eq__(self, other):
        if not isinstance(other, FuzzyKB):
            return NotImplemented
        return (self.logic, dict(self.modifiers), dict(self.datatypes), dict(self.concepts),
                dict(self.roles), self.axioms, dict(self.declarations)) == \
               (other.logic, dict(other.modifiers), dict(other.datatypes), dict(other.concepts),
                dict(other.roles), other.axioms, dict(other.declarations))

    __hash__ = None


# -- definition graph ------------------------------------------------------

def _references(definition) -> list:
    """Names a definition refers to, in a fixed order."""
    out = []
    for node in dl.walk(definition):
        if isinstance(node, (dl.Modified, dl.ModifiedDatatype, dl.ModifiedRole)):
            out.append(node.modifier)
        elif isinstance(node, (dl.Atomic, dl.DatatypeName, dl.RoleName, dl.DataRoleName)):
            out.append(node.name)
    return out


def definition_graph(kb: FuzzyKB) -> nx.DiGraph:
    graph = nx.DiGraph()
    for table in (kb.concepts, kb.roles, kb.datatypes):
        for name, definition in table.items():
            graph.add_node(name)
            for ref in _references(definition):
                graph.add_edge(name, ref)
    return graph


def _rotate(cycle: list) -> list:
    start = cycle.index(min(cycle))
    return cycle[start:] + cycle[:start]


def definition_cycle_check(kb: FuzzyKB) -> list:
    """Every cycle among fuzzy definitions, each starting at its smallest name."""
    cycles = {tuple(_rotate(list(c))) for c in nx.simple_cycles(definition_graph(kb))}
    return [list(c) for c in sorted(cycles, key=lambda c: (len(c), c))]


# -- simple roles ----------------------------------------------------------

def non_simple_roles(kb: FuzzyKB) -> set:
    """Role names on the right of a chain (or transitive), closed upwards."""
    seeds, graph = set(), nx.DiGraph()
    for ax in kb.axioms:
        if isinstance(ax, dl.RoleInclusion):
            sup = dl.role_name(ax.sup)
            if len(ax.chain) >= 2 and sup:
                seeds.add(sup)
            elif sup and dl.role_name(ax.chain[0]):
                graph.add_edge(dl.role_name(ax.chain[0]), sup)
        elif isinstance(ax, dl.Transitive) and dl.role_name(ax.role):
            seeds.add(dl.role_name(ax.role))
        elif isinstance(ax, dl.RoleEquivalence):
            names = [dl.role_name(r) for r in ax.roles if dl.role_name(r)]
            for x in names:
                for y in names:
                    if x != y:
                        graph.add_edge(x, y)
    for name, definition in kb.roles.items():
        base = dl.role_name(definition.role) if isinstance(definition, dl.ModifiedRole) else None
        if base:
            graph.add_edge(base, name)
    closed = set(seeds)
    for seed in seeds:
        if seed in graph:
            closed |= nx.descendants(graph, seed)
    return closed


_SIMPLE_USES = {
    dl.AtLeast: "cardinality restriction",
    dl.AtMost: "cardinality restriction",
    dl.SelfRestriction: "self restriction",
    dl.Functional: "functionality axiom",
    dl.DisjointRoles: "role disjointness axiom",
    dl.Irreflexive: "irreflexivity axiom",
    dl.Asymmetric: "asymmetry axiom",
}


def _role_uses(node):
    for sub in dl.walk(node):
        kind = _SIMPLE_USES.get(type(sub))
        if kind is None:
            continue
        roles = sub.roles if isinstance(sub, dl.DisjointRoles) else (sub.role,)
        for r in roles:
            yield r, kind


def simple_role_check(kb: FuzzyKB) -> list:
    bad = non_simple_roles(kb)
    if not bad:
        return []
    out = []
    sources = [(ax, loc) for ax, loc in zip(kb.axioms, kb.locations)]
    sources += [(c, f"definition of {name}") for name, c in kb.concepts.items()]
    for node, location in sources:
        for r, kind in _role_uses(node):
            name = dl.role_name(r)
            if name in bad:
                out.append(diag.error("NON_SIMPLE_ROLE", f"non-simple role {name} in {kind}",
                                      location, (name,)))
    return out


# -- building --------------------------------------------------------------

class _Builder:
    def __init__(self, doc: OwlDocument):
        self.doc = doc
        self.diags = []
        self.kinds = {}
        for d in doc.declarations:
            self.kinds.setdefault(d.name, set()).add(d.kind)
        for d in doc.datatype_definitions:
            self.kinds.setdefault(d.name, set()).add("Datatype")
        self.ranges = {d.name: d for d in doc.datatype_definitions}
        self.logic = DEFAULT_LOGIC
        self.modifiers, self.datatypes, self.concepts, self.roles = {}, {}, {}, {}
        self.payloads = {}  # subject -> (payload, location)

    def report(self, d):
        self.diags.append(d)

    def parse(self, text: str, location: str):
        try:
            return ann.parse_annotation(text)
        except ann.AnnotationSyntaxError as exc:
            self.report(exc.diagnostic.relocated(location))
            return None

    def local(self, payload, location: str, subject: str = None) -> bool:
        found = ann.validate_local(payload)
        for d in found:
            message = f"{subject}: {d.message}" if subject else d.message
            self.report(diag.Diagnostic(d.code, d.severity, message, location, d.values))
        return not diag.has_errors(found)

    # ontology header
    def ontology(self):
        labels = [a for a in self.doc.annotations if a.is_fuzzy]
        if len(labels) > 1:
            self.report(diag.error("DUPLICATE_ANNOTATION", "duplicate fuzzy annotation on the ontology"))
        for a in labels[:1]:
            payload = self.parse(a.value, "-")
            if payload is None:
                continue
            if not isinstance(payload, ann.OntologyPayload):
                self.report(diag.error("TYPE_MISMATCH",
                                       f"fuzzyType {payload.fuzzy_type} cannot annotate an ontology"))
                continue
            self.logic = Family.parse(payload.logic)

    # entities
    def entities(self):
        grouped = {}
        for e in self.doc.entity_annotations:
            if e.annotation.is_fuzzy:
                grouped.setdefault(e.subject, []).append(e)
        for subject, notes in grouped.items():
            if len(notes) > 1:
                self.report(diag.error("DUPLICATE_ANNOTATION", f"duplicate fuzzy annotation on {subject}",
                                       notes[1].location, (subject,)))
            first = notes[0]
            payload = self.parse(first.annotation.value, first.location)
            if payload is None:
                continue
            allowed = _DOMAIN.get(payload.fuzzy_type)
            known = self.kinds.get(subject, set())
            if allowed is None or (known and not known & allowed):
                what = "/".join(sorted(known)) if known else "entity"
                self.report(diag.error("TYPE_MISMATCH",
                                       f"fuzzyType {payload.fuzzy_type} cannot annotate {what} {subject}",
                                       first.location, (subject,)))
                continue
            self.payloads[subject] = (payload, first.location)
        for subject, (payload, location) in self.payloads.items():
            self.define(subject, payload, location)

    def define(self, subject, payload, location):
        if isinstance(payload, ann.ModifierPayload):
            if self.local(payload, location, subject):
                if payload.kind == "linear":
                    self.modifiers[subject] = ModifierDef.linear(payload.c)
                else:
                    self.modifiers[subject] = ModifierDef.triangular(payload.a, payload.b, payload.c)
        elif isinstance(payload, ann.DatatypePayload):
            if payload.kind == "modified":
                self.datatypes[subject] = dl.ModifiedDatatype(payload.modifier, dl.DatatypeName(payload.base))
                return
            k1 = k2 = None
            if subject in self.ranges:
                _, k1, k2 = self.ranges[subject].bounds
            ranged = payload.with_range(k1, k2)
            if self.local(ranged, location, subject):
                values = [ranged.k1, ranged.k2, *ranged.breakpoints]
                self.datatypes[subject] = MembershipShape(_SHAPES[payload.kind], *values)
        elif isinstance(payload, ann.ConceptPayload):
            self.local(payload, location, subject)
            if payload.kind == "modified":
                self.concepts[subject] = dl.Modified(payload.modifier, dl.Atomic(payload.base))
            elif payload.kind == "weighted":
                self.concepts[subject] = dl.Weighted(payload.value, dl.Atomic(payload.base))
            elif payload.kind == "nominal":
                self.concepts[subject] = dl.Nominal(payload.individual, payload.value)
            else:
                self.concepts[subject] = dl.WeightedSum(
                    tuple((w, dl.Atomic(base)) for w, base in payload.summands))
        elif isinstance(payload, ann.RolePayload):
            data = "DataProperty" in self.kinds.get(subject, ())
            base = dl.DataRoleName(payload.base) if data else dl.RoleName(payload.base)
            self.roles[subject] = dl.ModifiedRole(payload.modifier, base)
            self.report(diag.warning("UNSUPPORTED_DOWNSTREAM",
                                     f"modified role {subject} is not supported by fuzzyDL or DeLorean",
                                     location, (subject,)))

    def crisp_datatypes(self):
        for d in self.doc.datatype_definitions:
            if d.name in self.payloads:
                continue
            try:
                self.datatypes[d.name] = owl_datatype(d.range)
            except UnsupportedConstruct as exc:
                self.report(exc.diagnostic.relocated(d.location))

    def references(self):
        fuzzy_datatypes = {n for n, (p, _) in self.payloads.items() if isinstance(p, ann.DatatypePayload)}
        for subject, (payload, location) in self.payloads.items():
            modifier = getattr(payload, "modifier", None)
            if modifier is not None and modifier not in self.modifiers:
                self.report(diag.error("REF_MODIFIER",
                                       f"undefined modifier reference {modifier!r} in {subject}",
                                       location, (modifier,)))
            bases = payload.references() if isinstance(payload, ann.ConceptPayload) else \
                ((payload.base,) if getattr(payload, "base", None) else ())
            for base in bases:
                if base == subject:
                    self.report(diag.error("SELF_REFERENCE", f"{subject} is defined in terms of itself",
                                           location, (subject,)))
            if isinstance(payload, ann.DatatypePayload) and payload.kind == "modified" \
                    and payload.base != subject and payload.base not in fuzzy_datatypes:
                self.report(diag.error("REF_DATATYPE",
                                       f"undefined fuzzy datatype reference {payload.base!r} in {subject}",
                                       location, (payload.base,)))
            if isinstance(payload, ann.ConceptPayload):
                for base in bases:
                    if base not in self.concepts and "Class" not in self.kinds.get(base, ()):
                        self.report(diag.warning("UNDECLARED_NAME", f"class {base} used in {subject} "
                                                 "is not declared", location, (base,)))
            if isinstance(payload, ann.RolePayload) and not self.kinds.get(payload.base, set()) & \
                    {"ObjectProperty", "DataProperty"} and payload.base not in self.roles:
                self.report(diag.warning("UNDECLARED_NAME", f"property {payload.base} used in {subject} "
                                         "is not declared", location, (payload.base,)))

    def axioms(self):
        out, locations = [], []
        for ax in self.doc.axioms:
            try:
                forms = to_dl(ax)
            except UnsupportedConstruct as exc:
                self.report(exc.diagnostic)
                continue
            unsupported = [n for f in forms for n in dl.walk(f)
                           if isinstance(n, (dl.TopDataRole, dl.BottomDataRole))]
            if unsupported:
                self.report(diag.error("UNSUPPORTED_CONSTRUCT",
                                       f"{dl.render(unsupported[0])} in {ax.kind} is not supported",
                                       ax.location))
                continue
            labels = ax.fuzzy_labels
            if len(labels) > 1:
                self.report(diag.error("DUPLICATE_ANNOTATION", f"duplicate fuzzy annotation on {ax.kind}",
                                       ax.location))
            if labels:
                payload = self.parse(labels[0], ax.location)
                if payload is not None:
                    forms = self.graded(ax, forms, payload)
            out.extend(forms)
            locations.extend([ax.location] * len(forms))
        return out, locations

    def graded(self, ax, forms, payload):
        if not isinstance(payload, ann.AxiomPayload):
            self.report(diag.error("TYPE_MISMATCH", f"fuzzyType {payload.fuzzy_type} cannot annotate "
                                   f"axiom {ax.kind}", ax.location))
            return forms
        if not all(f.gradable for f in forms):
            self.report(diag.error("NON_GRADABLE_AXIOM",
                                   f"{ax.kind} ({forms[0].tag}) takes no degree", ax.location))
            return forms
        if not self.local(payload, ax.location):
            return forms
        return tuple(f.with_degree(payload.degree) for f in forms)

    def undeclared(self):
        for ref in self.doc.undeclared():
            if ref.name in self.concepts or ref.name in self.roles or ref.name in self.datatypes:
                continue
            self.report(diag.warning("UNDECLARED_NAME",
                                     f"{ref.kind} {ref.name} is used without a declaration",
                                     ref.location, (ref.name,)))


def build_kb(doc: OwlDocument) -> tuple:
    """Resolve ``doc`` into ``(FuzzyKB, diagnostics)``; never raises on bad content."""
    b = _Builder(doc)
    b.ontology()
    b.entities()
    b.crisp_datatypes()
    b.references()
    axioms, locations = b.axioms()
    declarations = {}
    for d in doc.declarations:
        declarations.setdefault(d.kind, set()).add(d.name)
    kb = FuzzyKB(
        logic=b.logic,
        modifiers=_frozen(b.modifiers),
        datatypes=_frozen(b.datatypes),
        concepts=_frozen(b.concepts),
        roles=_frozen(b.roles),
        axioms=tuple(axioms),
        locations=tuple(locations),
        declarations=_frozen({k: frozenset(v) for k, v in declarations.items()}),
    )
    for cycle in definition_cycle_check(kb):
        if len(cycle) > 1:
            b.report(diag.error("DEFINITION_CYCLE",
                                "definitions are cyclic: " + " -> ".join(cycle + cycle[:1]),
                                values=tuple(cycle)))
    b.diags.extend(simple_role_check(kb))
    b.undeclared()
    return kb, b.diags


def crisp_multiset(kb: FuzzyKB) -> Counter:
    """The KB's axioms with every degree reset to 1, as a multiset."""
    return Counter(ax.crisp() for ax in kb.axioms)
