"""Emit a fuzzy KB in reasoner-oriented text dialects, gated per target.

The ``fuzzydl`` and ``delorean`` dialects are import formats modelled on the
two reasoners' input styles; they are meant to be adapted, not to be
bit-compatible with any released tool.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from . import diagnostics as diag
from . import dl
from .kb import FuzzyKB, definition_graph
from .logic import MembershipShape, ModifierDef, ModifierKind, format_number


class Support(str, enum.Enum):
    YES = "yes"
    NO = "no"
    PARTIAL = "partial"


def _tags(prefix: str, n: int) -> list:
    return [f"{prefix}{i}" for i in range(1, n + 1)]


ALL_TAGS = _tags("C", 19) + _tags("R", 5) + _tags("D", 5) + _tags("M", 2) + _tags("A", 25)
_TAG_ORDER = {tag: i for i, tag in enumerate(ALL_TAGS)}

_FUZZYDL_NO = {"C11", "C12", "C13", "C14", "C15", "R3", "R4",
               "A3", "A6", "A7", "A20", "A21", "A23", "A25"}
_DELOREAN_NO = {"C18", "C19", "R4"}

CHAIN_RESTRICTION = "restricted to the case m = 1"


@dataclass(frozen=True)
class TargetProfile:
    name: str
    support: dict = field(default_factory=dict)

    def status(self, tag: str) -> Support:
        return self.support.get(tag, Support.YES)


def _profile(name: str, no: set, partial: set = frozenset()) -> TargetProfile:
    support = {t: Support.NO if t in no else Support.PARTIAL if t in partial else Support.YES
               for t in ALL_TAGS}
    return TargetProfile(name, support)


PROFILES = {
    "generic": _profile("generic", set()),
    "fuzzydl": _profile("fuzzydl", _FUZZYDL_NO, {"A12"}),
    "delorean": _profile("delorean", _DELOREAN_NO),
}


def profile(target) -> TargetProfile:
    if isinstance(target, TargetProfile):
        return target
    try:
        return PROFILES[target]
    except KeyError:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(PROFILES)}") from None


# -- construct inventory -----------------------------------------------------

@dataclass(frozen=True)
class Occurrence:
    tag: str
    where: str      # rendered axiom or "name := definition"
    location: str
    node: object


def _node_tag(node):
    if isinstance(node, MembershipShape):
        return dl.SHAPE_TAGS[node.kind.value]
    if isinstance(node, ModifierDef):
        return "M1" if node.kind is ModifierKind.LINEAR else "M2"
    return getattr(node, "tag", None)


def occurrences(kb: FuzzyKB) -> list:
    """Every tagged construct in the KB, definitions first, axioms in order."""
    out = []
    for name, mod in kb.modifiers.items():
        out.append(Occurrence(_node_tag(mod), f"modifier {name}", name, mod))
    for table in (kb.datatypes, kb.concepts, kb.roles):
        for name, definition in table.items():
            where = f"{name} := {dl.render(definition)}"
            for node in dl.walk(definition):
                tag = _node_tag(node)
                if tag:
                    out.append(Occurrence(tag, where, name, node))
    locations = kb.locations or ("-",) * len(kb.axioms)
    for ax, loc in zip(kb.axioms, locations):
        where = dl.render(ax)
        for node in dl.walk(ax):
            tag = _node_tag(node)
            if tag:
                out.append(Occurrence(tag, where, loc, node))
    return out


@dataclass(frozen=True)
class ReportEntry:
    tag: str
    count: int
    support: Support
    violations: tuple = ()

    @property
    def supported(self) -> bool:
        return self.support is Support.YES or (self.support is Support.PARTIAL and not self.violations)


def _violates(prof: TargetProfile, occ: Occurrence) -> bool:
    status = prof.status(occ.tag)
    if status is Support.NO:
        return True
    if status is Support.PARTIAL and occ.tag == "A12":
        return len(occ.node.chain) != 1
    return False


def capability_report(kb: FuzzyKB, target) -> list:
    prof = profile(target)
    counts, violations = Counter(), {}
    for occ in occurrences(kb):
        counts[occ.tag] += 1
        if _violates(prof, occ):
            violations.setdefault(occ.tag, []).append(occ)
    return [ReportEntry(tag, counts[tag], prof.status(tag), tuple(violations.get(tag, ())))
            for tag in sorted(counts, key=_TAG_ORDER.__getitem__)]


class TranslationError(ValueError):
    def __init__(self, diagnostics: list):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics))


def gate(kb: FuzzyKB, target) -> list:
    prof = profile(target)
    diags = []
    for entry in capability_report(kb, prof):
        for occ in entry.violations:
            if entry.support is Support.PARTIAL:
                m = len(occ.node.chain)
                diags.append(diag.error(
                    "TARGET_PARTIAL",
                    f"{occ.tag} is {CHAIN_RESTRICTION} for {prof.name}; chain of length {m} in {occ.where}",
                    occ.location, (occ.tag, m)))
            else:
                diags.append(diag.error("TARGET_UNSUPPORTED",
                                        f"{occ.tag} unsupported by {prof.name} in {occ.where}",
                                        occ.location, (occ.tag,)))
    return diags


# -- emission ------------------------------------------------------------------

def _definition_order(kb: FuzzyKB) -> list:
    """Defined names with every dependency before its dependents, else source order."""
    graph = definition_graph(kb)
    names = [*kb.datatypes, *kb.concepts, *kb.roles]
    order, seen = [], set()

    def visit(name):
        if name in seen:
            return
        seen.add(name)
        if name in graph:
            for dep in sorted(graph.successors(name), key=lambda n: names.index(n) if n in names else -1):
                visit(dep)
        if name in names:
            order.append(name)

    for name in names:
        visit(name)
    return order


def _num(v) -> str:
    return format_number(v)


class _Dialect:
    name = "generic"

    def emit(self, kb: FuzzyKB) -> str:
        lines = [self.logic(kb.logic.value)]
        lines += [self.modifier(n, m) for n, m in kb.modifiers.items()]
        for name in _definition_order(kb):
            if name in kb.datatypes:
                lines.append(self.datatype_def(name, kb.datatypes[name]))
            elif name in kb.concepts:
                lines.append(self.concept_def(name, kb.concepts[name]))
            else:
                lines.append(self.role_def(name, kb.roles[name]))
        lines += [self.axiom(ax) for ax in kb.axioms]
        return "\n".join(lines) + "\n"

    # generic: the DL notation itself
    def logic(self, name):
        return f"logic {name}"

    def modifier(self, name, m):
        return f"modifier {name} = {m}"

    def datatype_def(self, name, d):
        return f"datatype {name} = {dl.render(d)}"

    def concept_def(self, name, c):
        return f"concept {name} ≡ {dl.render(c)}"

    def role_def(self, name, r):
        return f"role {name} ≡ {dl.render(r)}"

    def axiom(self, ax):
        return dl.render_body(ax) if ax.gradable and ax.degree == 1 else dl.render(ax)


class _FuzzyDL(_Dialect):
    """S-expression style."""

    name = "fuzzydl"

    def logic(self, name):
        return f"(define-fuzzy-logic {name})"

    def modifier(self, name, m):
        if m.kind is ModifierKind.LINEAR:
            return f"(define-modifier {name} linear {_num(m.c)})"
        return f"(define-modifier {name} triangular {_num(m.a)} {_num(m.b)} {_num(m.c)})"

    def datatype_def(self, name, d):
        return f"(define-fuzzy-concept {name} {self.range(d)})"

    def concept_def(self, name, c):
        return f"(define-concept {name} {self.concept(c)})"

    def role_def(self, name, r):
        return f"(define-role {name} {self.role(r)})"

    def range(self, d):
        if isinstance(d, MembershipShape):
            return f"({d.kind.value} {' '.join(_num(v) for v in (d.k1, d.k2, *d.breakpoints))})"
        if isinstance(d, dl.DatatypeName):
            return d.name
        if isinstance(d, dl.ModifiedDatatype):
            return f"(modified {d.modifier} {self.range(d.base)})"
        if isinstance(d, dl.CrispRange):
            kind = "integer" if d.integer else "real"
            lo = "*" if d.lo is None else _num(d.lo)
            hi = "*" if d.hi is None else _num(d.hi)
            return f"({kind} {lo} {hi})"
        if isinstance(d, dl.DataValues):
            return f"(one-of {' '.join(_num(v) for v in d.values)})"
        raise TypeError(d)

    def role(self, r):
        if isinstance(r, (dl.RoleName, dl.DataRoleName)):
            return r.name
        if isinstance(r, dl.InverseRole):
            return f"(inv {self.role(r.role)})"
        if isinstance(r, dl.TopRole):
            return "*top-role*"
        if isinstance(r, dl.BottomRole):
            return "*bottom-role*"
        if isinstance(r, dl.ModifiedRole):
            return f"(modified {r.modifier} {self.role(r.role)})"
        raise TypeError(r)

    def concept(self, c):
        rec, role = self.concept, self.role
        match c:
            case dl.Atomic(name):
                return name
            case dl.Top():
                return "*top*"
            case dl.Bottom():
                return "*bottom*"
            case dl.And(ops):
                return f"(and {' '.join(rec(o) for o in ops)})"
            case dl.Or(ops):
                return f"(or {' '.join(rec(o) for o in ops)})"
            case dl.Not(op):
                return f"(not {rec(op)})"
            case dl.Forall(r, f):
                return f"(all {role(r)} {rec(f)})"
            case dl.Exists(r, f):
                return f"(some {role(r)} {rec(f)})"
            case dl.DataForall(t, d):
                return f"(all {role(t)} {self.range(d)})"
            case dl.DataExists(t, d):
                return f"(some {role(t)} {self.range(d)})"
            case dl.Nominal(ind, deg):
                return f"(nominal {_num(deg)} {ind})" if deg != 1 else f"(nominal {ind})"
            case dl.AtLeast(n, r, f) | dl.DataAtLeast(n, r, f):
                return f"(at-least {n} {role(r)} {rec(f) if isinstance(c, dl.AtLeast) else self.range(f)})"
            case dl.AtMost(n, r, f) | dl.DataAtMost(n, r, f):
                return f"(at-most {n} {role(r)} {rec(f) if isinstance(c, dl.AtMost) else self.range(f)})"
            case dl.SelfRestriction(r):
                return f"(self {role(r)})"
            case dl.Modified(mod, op):
                return f"({mod} {rec(op)})"
            case dl.Weighted(w, op):
                return f"({_num(w)} {rec(op)})"
            case dl.WeightedSum(summands):
                return f"(w-sum {' '.join(f'({_num(w)} {rec(op)})' for w, op in summands)})"
        raise TypeError(c)

    def _deg(self, ax):
        return "" if ax.degree == 1 else f" {_num(ax.degree)}"

    def axiom(self, ax):
        c, r = self.concept, self.role
        match ax:
            case dl.ConceptAssertion(ind, concept, _):
                return f"(instance {ind} {c(concept)}{self._deg(ax)})"
            case dl.RoleAssertion(role, a, b, _):
                return f"(related {a} {b} {r(role)}{self._deg(ax)})"
            case dl.NegativeRoleAssertion(role, a, b, _):
                return f"(not-related {a} {b} {r(role)}{self._deg(ax)})"
            case dl.DataAssertion(role, a, v, _):
                return f"(related {a} {_num(v)} {r(role)}{self._deg(ax)})"
            case dl.NegativeDataAssertion(role, a, v, _):
                return f"(not-related {a} {_num(v)} {r(role)}{self._deg(ax)})"
            case dl.DifferentIndividuals(a, b):
                return f"(different {a} {b})"
            case dl.SameIndividuals(a, b):
                return f"(same {a} {b})"
            case dl.ConceptInclusion(sub, sup, _):
                return f"(implies {c(sub)} {c(sup)}{self._deg(ax)})"
            case dl.ConceptEquivalence(concepts):
                return f"(equivalent-concepts {' '.join(c(x) for x in concepts)})"
            case dl.DisjointConcepts(concepts):
                return f"(disjoint {' '.join(c(x) for x in concepts)})"
            case dl.DisjointUnion(union, parts):
                return f"(disjoint-union {c(union)} {' '.join(c(x) for x in parts)})"
            case dl.RoleInclusion(chain, sup, _):
                sub = r(chain[0]) if len(chain) == 1 else f"(chain {' '.join(r(x) for x in chain)})"
                return f"(implies-role {sub} {r(sup)}{self._deg(ax)})"
            case dl.DataRoleInclusion(sub, sup, _):
                return f"(implies-role {r(sub)} {r(sup)}{self._deg(ax)})"
            case dl.RoleEquivalence(roles) | dl.DataRoleEquivalence(roles):
                return f"(equivalent-roles {' '.join(r(x) for x in roles)})"
            case dl.Domain(role, concept):
                return f"(domain {r(role)} {c(concept)})"
            case dl.Range(role, filler):
                target = self.range(filler) if isinstance(role, dl.DataRoleName) else c(filler)
                return f"(range {r(role)} {target})"
            case dl.Functional(role):
                return f"(functional {r(role)})"
            case dl.Transitive(role):
                return f"(transitive {r(role)})"
            case dl.DisjointRoles(roles) | dl.DisjointDataRoles(roles):
                return f"(disjoint-roles {' '.join(r(x) for x in roles)})"
            case dl.Reflexive(role):
                return f"(reflexive {r(role)})"
            case dl.Irreflexive(role):
                return f"(irreflexive {r(role)})"
            case dl.Symmetric(role):
                return f"(symmetric {r(role)})"
            case dl.Asymmetric(role):
                return f"(asymmetric {r(role)})"
        raise TypeError(ax)


class _DeLorean(_Dialect):
    """Keyword style, one statement per line ending in ``;``."""

    name = "delorean"

    def logic(self, name):
        return f"logic {name};"

    def modifier(self, name, m):
        if m.kind is ModifierKind.LINEAR:
            return f"modifier {name} = linear({_num(m.c)});"
        return f"modifier {name} = triangular({_num(m.a)}, {_num(m.b)}, {_num(m.c)});"

    def datatype_def(self, name, d):
        return f"datatype {name} = {self.range(d)};"

    def concept_def(self, name, c):
        return f"concept {name} = {self.concept(c)};"

    def role_def(self, name, r):
        return f"role {name} = {self.role(r)};"

    def range(self, d):
        if isinstance(d, MembershipShape):
            kind = {"left": "leftshoulder", "right": "rightshoulder"}.get(d.kind.value, d.kind.value)
            return f"{kind}({', '.join(_num(v) for v in (d.k1, d.k2, *d.breakpoints))})"
        if isinstance(d, dl.DatatypeName):
            return d.name
        if isinstance(d, dl.ModifiedDatatype):
            return f"{d.modifier}({self.range(d.base)})"
        if isinstance(d, dl.CrispRange):
            kind = "integer" if d.integer else "real"
            lo = "*" if d.lo is None else _num(d.lo)
            hi = "*" if d.hi is None else _num(d.hi)
            return f"{kind}[{lo}, {hi}]"
        if isinstance(d, dl.DataValues):
            return f"values({', '.join(_num(v) for v in d.values)})"
        raise TypeError(d)

    def role(self, r):
        if isinstance(r, (dl.RoleName, dl.DataRoleName)):
            return r.name
        if isinstance(r, dl.InverseRole):
            return f"inverse({self.role(r.role)})"
        if isinstance(r, dl.TopRole):
            return "TOP_ROLE"
        if isinstance(r, dl.BottomRole):
            return "BOTTOM_ROLE"
        if isinstance(r, dl.ModifiedRole):
            return f"{r.modifier}({self.role(r.role)})"
        raise TypeError(r)

    def _group(self, c):
        text = self.concept(c)
        return f"({text})" if isinstance(c, (dl.And, dl.Or)) else text

    def concept(self, c):
        g, role = self._group, self.role
        match c:
            case dl.Atomic(name):
                return name
            case dl.Top():
                return "TOP"
            case dl.Bottom():
                return "BOTTOM"
            case dl.And(ops):
                return " and ".join(g(o) for o in ops)
            case dl.Or(ops):
                return " or ".join(g(o) for o in ops)
            case dl.Not(op):
                return f"not {g(op)}"
            case dl.Forall(r, f):
                return f"only {role(r)} {g(f)}"
            case dl.Exists(r, f):
                return f"some {role(r)} {g(f)}"
            case dl.DataForall(t, d):
                return f"only {role(t)} {self.range(d)}"
            case dl.DataExists(t, d):
                return f"some {role(t)} {self.range(d)}"
            case dl.Nominal(ind, deg):
                return f"{{{ind}}}" if deg == 1 else f"{{{ind} : {_num(deg)}}}"
            case dl.AtLeast(n, r, f):
                return f"min {n} {role(r)} {g(f)}"
            case dl.AtMost(n, r, f):
                return f"max {n} {role(r)} {g(f)}"
            case dl.DataAtLeast(n, t, d):
                return f"min {n} {role(t)} {self.range(d)}"
            case dl.DataAtMost(n, t, d):
                return f"max {n} {role(t)} {self.range(d)}"
            case dl.SelfRestriction(r):
                return f"self {role(r)}"
            case dl.Modified(mod, op):
                return f"{mod}({self.concept(op)})"
            case dl.Weighted(w, op):
                return f"{_num(w)} * {g(op)}"
            case dl.WeightedSum(summands):
                return " + ".join(f"{_num(w)} * {g(op)}" for w, op in summands)
        raise TypeError(c)

    def _deg(self, ax):
        return "" if ax.degree == 1 else f" >= {_num(ax.degree)}"

    def axiom(self, ax):
        c, r = self.concept, self.role
        match ax:
            case dl.ConceptAssertion(ind, concept, _):
                body = f"{ind} : {c(concept)}"
            case dl.RoleAssertion(role, a, b, _):
                body = f"({a}, {b}) : {r(role)}"
            case dl.NegativeRoleAssertion(role, a, b, _):
                body = f"({a}, {b}) : not {r(role)}"
            case dl.DataAssertion(role, a, v, _):
                body = f"({a}, {_num(v)}) : {r(role)}"
            case dl.NegativeDataAssertion(role, a, v, _):
                body = f"({a}, {_num(v)}) : not {r(role)}"
            case dl.DifferentIndividuals(a, b):
                return f"different {a} {b};"
            case dl.SameIndividuals(a, b):
                return f"same {a} {b};"
            case dl.ConceptInclusion(sub, sup, _):
                body = f"{c(sub)} subclass {c(sup)}"
            case dl.ConceptEquivalence(concepts):
                return " equivalent ".join(self._group(x) for x in concepts) + ";"
            case dl.DisjointConcepts(concepts):
                return f"disjoint {', '.join(c(x) for x in concepts)};"
            case dl.DisjointUnion(union, parts):
                return f"disjointunion {c(union)} = {', '.join(c(x) for x in parts)};"
            case dl.RoleInclusion(chain, sup, _):
                body = f"{' o '.join(r(x) for x in chain)} subrole {r(sup)}"
            case dl.DataRoleInclusion(sub, sup, _):
                body = f"{r(sub)} subrole {r(sup)}"
            case dl.RoleEquivalence(roles) | dl.DataRoleEquivalence(roles):
                return " equivalent ".join(r(x) for x in roles) + ";"
            case dl.Domain(role, concept):
                return f"domain {r(role)} {c(concept)};"
            case dl.Range(role, filler):
                target = self.range(filler) if isinstance(role, dl.DataRoleName) else c(filler)
                return f"range {r(role)} {target};"
            case dl.Functional(role):
                return f"functional {r(role)};"
            case dl.Transitive(role):
                return f"transitive {r(role)};"
            case dl.DisjointRoles(roles) | dl.DisjointDataRoles(roles):
                return f"disjointroles {', '.join(r(x) for x in roles)};"
            case dl.Reflexive(role):
                return f"reflexive {r(role)};"
            case dl.Irreflexive(role):
                return f"irreflexive {r(role)};"
            case dl.Symmetric(role):
                return f"symmetric {r(role)};"
            case dl.Asymmetric(role):
                return f"asymmetric {r(role)};"
            case _:
                raise TypeError(ax)
        return f"{body}{self._deg(ax)};"


DIALECTS = {"generic": _Dialect(), "fuzzydl": _FuzzyDL(), "delorean": _DeLorean()}


def translate(kb: FuzzyKB, target) -> str:
    """Dialect text for ``kb``; raises :class:`TranslationError` on gated constructs."""
    prof = profile(target)
    problems = gate(kb, prof)
    if problems:
        raise TranslationError(problems)
    return DIALECTS.get(prof.name, DIALECTS["generic"]).emit(kb)
