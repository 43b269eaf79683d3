"""Fuzzy SROIQ(D) syntax trees: concepts, roles, datatypes and axioms.

Each node class carries a ``tag`` naming the constructor it implements
(``C1``-``C19``, ``R1``-``R5``, ``D1``-``D5``, ``A1``-``A25``); the translator's
capability tables are keyed by these tags.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Iterator, Optional, Union

from .logic import MembershipShape, format_number

ONE = Fraction(1)


class Node:
    tag: ClassVar[Optional[str]] = None

    def children(self) -> Iterator:
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if isinstance(value, (Node, MembershipShape)):
                yield value
            elif isinstance(value, tuple):
                for item in value:
                    if isinstance(item, (Node, MembershipShape)):
                        yield item
                    elif isinstance(item, tuple):
                        yield from (v for v in item if isinstance(v, Node))

    def __str__(self) -> str:
        return render(self)


def walk(node) -> Iterator:
    """Pre-order traversal over a node and all nested nodes."""
    yield node
    if isinstance(node, Node):
        for child in node.children():
            yield from walk(child)


# -- roles -----------------------------------------------------------------

@dataclass(frozen=True)
class RoleName(Node):
    tag: ClassVar = "R1"
    name: str


@dataclass(frozen=True)
class InverseRole(Node):
    tag: ClassVar = "R2"
    role: "Role"


@dataclass(frozen=True)
class TopRole(Node):
    tag: ClassVar = "R3"


@dataclass(frozen=True)
class BottomRole(Node):
    tag: ClassVar = "R3"


@dataclass(frozen=True)
class ModifiedRole(Node):
    tag: ClassVar = "R4"
    modifier: str
    role: "Role"


@dataclass(frozen=True)
class DataRoleName(Node):
    tag: ClassVar = "R5"
    name: str


@dataclass(frozen=True)
class TopDataRole(Node):
    tag: ClassVar = "R5"


@dataclass(frozen=True)
class BottomDataRole(Node):
    tag: ClassVar = "R5"


Role = Union[RoleName, InverseRole, TopRole, BottomRole, ModifiedRole]
DataRole = Union[DataRoleName, TopDataRole, BottomDataRole]


def role_name(role) -> Optional[str]:
    """Name of the atomic role underneath inverses, or None."""
    while isinstance(role, InverseRole):
        role = role.role
    return role.name if isinstance(role, (RoleName, DataRoleName)) else None


def inverse(role) -> Node:
    return role.role if isinstance(role, InverseRole) else InverseRole(role)


# -- datatypes -------------------------------------------------------------

@dataclass(frozen=True)
class DatatypeName(Node):
    """Reference to a named (fuzzy or crisp) datatype or an XSD builtin."""

    name: str


@dataclass(frozen=True)
class ModifiedDatatype(Node):
    tag: ClassVar = "D5"
    modifier: str
    base: "Datatype"


@dataclass(frozen=True)
class CrispRange(Node):
    """A crisp interval of rationals, optionally restricted to integers."""

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    integer: bool = False


@dataclass(frozen=True)
class DataValues(Node):
    values: tuple


Datatype = Union[DatatypeName, MembershipShape, ModifiedDatatype, CrispRange, DataValues]
TOP_DATATYPE = DatatypeName("rdfs:Literal")

SHAPE_TAGS = {"left": "D1", "right": "D2", "triangular": "D3", "trapezoidal": "D4"}


def datatype_tag(d) -> Optional[str]:
    if isinstance(d, MembershipShape):
        return SHAPE_TAGS[d.kind.value]
    return getattr(d, "tag", None)


# -- concepts --------------------------------------------------------------

@dataclass(frozen=True)
class Atomic(Node):
    tag: ClassVar = "C1"
    name: str


@dataclass(frozen=True)
class Top(Node):
    tag: ClassVar = "C2"


@dataclass(frozen=True)
class Bottom(Node):
    tag: ClassVar = "C3"


@dataclass(frozen=True)
class And(Node):
    tag: ClassVar = "C4"
    operands: tuple


@dataclass(frozen=True)
class Or(Node):
    tag: ClassVar = "C5"
    operands: tuple


@dataclass(frozen=True)
class Not(Node):
    tag: ClassVar = "C6"
    operand: "Concept"


@dataclass(frozen=True)
class Forall(Node):
    tag: ClassVar = "C7"
    role: Role
    filler: "Concept"


@dataclass(frozen=True)
class Exists(Node):
    tag: ClassVar = "C8"
    role: Role
    filler: "Concept"


@dataclass(frozen=True)
class DataForall(Node):
    tag: ClassVar = "C9"
    role: DataRole
    range: Datatype


@dataclass(frozen=True)
class DataExists(Node):
    tag: ClassVar = "C10"
    role: DataRole
    range: Datatype


@dataclass(frozen=True)
class Nominal(Node):
    tag: ClassVar = "C11"
    individual: str
    degree: Fraction = ONE


@dataclass(frozen=True)
class AtLeast(Node):
    tag: ClassVar = "C12"
    n: int
    role: Role
    filler: "Concept"


@dataclass(frozen=True)
class AtMost(Node):
    tag: ClassVar = "C13"
    n: int
    role: Role
    filler: "Concept"


@dataclass(frozen=True)
class DataAtLeast(Node):
    tag: ClassVar = "C14"
    n: int
    role: DataRole
    range: Datatype


@dataclass(frozen=True)
class DataAtMost(Node):
    tag: ClassVar = "C15"
    n: int
    role: DataRole
    range: Datatype


@dataclass(frozen=True)
class SelfRestriction(Node):
    tag: ClassVar = "C16"
    role: Role


@dataclass(frozen=True)
class Modified(Node):
    tag: ClassVar = "C17"
    modifier: str
    operand: "Concept"


@dataclass(frozen=True)
class Weighted(Node):
    tag: ClassVar = "C18"
    weight: Fraction
    operand: "Concept"


@dataclass(frozen=True)
class WeightedSum(Node):
    tag: ClassVar = "C19"
    summands: tuple  # ((weight, concept), ...)


Concept = Union[Atomic, Top, Bottom, And, Or, Not, Forall, Exists, DataForall, DataExists,
                Nominal, AtLeast, AtMost, DataAtLeast, DataAtMost, SelfRestriction,
                Modified, Weighted, WeightedSum]

CARDINALITY = (AtLeast, AtMost, DataAtLeast, DataAtMost)


# -- axioms ----------------------------------------------------------------

class Axiom(Node):
    gradable: ClassVar[bool] = False
    box: ClassVar[str] = "rbox"

    def crisp(self) -> "Axiom":
        """The same axiom with its degree reset to 1."""
        return dataclasses.replace(self, degree=ONE) if self.gradable else self

    def with_degree(self, value) -> "Axiom":
        if not self.gradable:
            raise ValueError(f"{self.tag} axioms take no degree")
        return dataclasses.replace(self, degree=Fraction(value))


@dataclass(frozen=True)
class ConceptAssertion(Axiom):
    tag: ClassVar = "A1"
    gradable: ClassVar = True
    box: ClassVar = "abox"
    individual: str
    concept: Concept
    degree: Fraction = ONE


@dataclass(frozen=True)
class RoleAssertion(Axiom):
    tag: ClassVar = "A2"
    gradable: ClassVar = True
    box: ClassVar = "abox"
    role: Role
    subject: str
    object: str
    degree: Fraction = ONE


@dataclass(frozen=True)
class NegativeRoleAssertion(Axiom):
    tag: ClassVar = "A3"
    gradable: ClassVar = True
    box: ClassVar = "abox"
    role: Role
    subject: str
    object: str
    degree: Fraction = ONE


@dataclass(frozen=True)
class DataAssertion(Axiom):
    tag: ClassVar = "A4"
    gradable: ClassVar = True
    box: ClassVar = "abox"
    role: DataRole
    subject: str
    value: Fraction
    degree: Fraction = ONE


@dataclass(frozen=True)
class NegativeDataAssertion(Axiom):
    tag: ClassVar = "A5"
    gradable: ClassVar = True
    box: ClassVar = "abox"
    role: DataRole
    subject: str
    value: Fraction
    degree: Fraction = ONE


@dataclass(frozen=True)
class DifferentIndividuals(Axiom):
    tag: ClassVar = "A6"
    box: ClassVar = "abox"
    first: str
    second: str


@dataclass(frozen=True)
class SameIndividuals(Axiom):
    tag: ClassVar = "A7"
    box: ClassVar = "abox"
    first: str
    second: str


@dataclass(frozen=True)
class ConceptInclusion(Axiom):
    tag: ClassVar = "A8"
    gradable: ClassVar = True
    box: ClassVar = "tbox"
    sub: Concept
    sup: Concept
    degree: Fraction = ONE


@dataclass(frozen=True)
class ConceptEquivalence(Axiom):
    tag: ClassVar = "A9"
    box: ClassVar = "tbox"
    concepts: tuple


@dataclass(frozen=True)
class DisjointConcepts(Axiom):
    tag: ClassVar = "A10"
    box: ClassVar = "tbox"
    concepts: tuple


@dataclass(frozen=True)
class DisjointUnion(Axiom):
    tag: ClassVar = "A11"
    box: ClassVar = "tbox"
    union: Concept
    parts: tuple


@dataclass(frozen=True)
class RoleInclusion(Axiom):
    tag: ClassVar = "A12"
    gradable: ClassVar = True
    chain: tuple
    sup: Role
    degree: Fraction = ONE


@dataclass(frozen=True)
class DataRoleInclusion(Axiom):
    tag: ClassVar = "A13"
    gradable: ClassVar = True
    sub: DataRole
    sup: DataRole
    degree: Fraction = ONE


@dataclass(frozen=True)
class RoleEquivalence(Axiom):
    tag: ClassVar = "A14"
    roles: tuple


@dataclass(frozen=True)
class DataRoleEquivalence(Axiom):
    tag: ClassVar = "A15"
    roles: tuple


@dataclass(frozen=True)
class Domain(Axiom):
    tag: ClassVar = "A16"
    role: Node
    concept: Concept

    def reduction(self) -> ConceptInclusion:
        if isinstance(self.role, (DataRoleName, TopDataRole, BottomDataRole)):
            return ConceptInclusion(DataExists(self.role, TOP_DATATYPE), self.concept)
        return ConceptInclusion(Exists(self.role, Top()), self.concept)


@dataclass(frozen=True)
class Range(Axiom):
    tag: ClassVar = "A17"
    role: Node
    filler: Node  # a concept, or a datatype for concrete roles

    def reduction(self) -> ConceptInclusion:
        if isinstance(self.role, (DataRoleName, TopDataRole, BottomDataRole)):
            return ConceptInclusion(Top(), DataForall(self.role, self.filler))
        return ConceptInclusion(Top(), Forall(self.role, self.filler))


@dataclass(frozen=True)
class Functional(Axiom):
    tag: ClassVar = "A18"
    role: Node

    def reduction(self) -> ConceptInclusion:
        if isinstance(self.role, (DataRoleName, TopDataRole, BottomDataRole)):
            return ConceptInclusion(Top(), DataAtMost(1, self.role, TOP_DATATYPE))
        return ConceptInclusion(Top(), AtMost(1, self.role, Top()))


@dataclass(frozen=True)
class Transitive(Axiom):
    tag: ClassVar = "A19"
    role: Role


@dataclass(frozen=True)
class DisjointRoles(Axiom):
    tag: ClassVar = "A20"
    roles: tuple


@dataclass(frozen=True)
class DisjointDataRoles(Axiom):
    tag: ClassVar = "A21"
    roles: tuple


@dataclass(frozen=True)
class Reflexive(Axiom):
    tag: ClassVar = "A22"
    role: Role


@dataclass(frozen=True)
class Irreflexive(Axiom):
    tag: ClassVar = "A23"
    role: Role


@dataclass(frozen=True)
class Symmetric(Axiom):
    tag: ClassVar = "A24"
    role: Role


@dataclass(frozen=True)
class Asymmetric(Axiom):
    tag: ClassVar = "A25"
    role: Role


# -- rendering -------------------------------------------------------------

def _deg(value) -> str:
    return format_number(value)


def _wrap(node) -> str:
    text = render(node)
    if isinstance(node, (And, Or, WeightedSum)) or (isinstance(node, Weighted)):
        return f"({text})"
    return text


def render(node) -> str:
    """Human-readable DL notation."""
    if isinstance(node, MembershipShape):
        return str(node)
    match node:
        case RoleName(name) | DataRoleName(name) | Atomic(name) | DatatypeName(name):
            return name
        case InverseRole(role):
            return f"{render(role)}⁻"
        case TopRole():
            return "U"
        case BottomRole():
            return "¬U"
        case TopDataRole():
            return "U_D"
        case BottomDataRole():
            return "¬U_D"
        case ModifiedRole(mod, role):
            return f"{mod}({render(role)})"
        case ModifiedDatatype(mod, base):
            return f"{mod}({render(base)})"
        case CrispRange(lo, hi, integer):
            kind = "integer" if integer else "rational"
            lo_s = "-∞" if lo is None else _deg(lo)
            hi_s = "+∞" if hi is None else _deg(hi)
            return f"{kind}[{lo_s}, {hi_s}]"
        case DataValues(values):
            return "{" + ", ".join(_deg(v) for v in values) + "}"
        case Top():
            return "⊤"
        case Bottom():
            return "⊥"
        case And(ops):
            return " ⊓ ".join(_wrap(op) for op in ops)
        case Or(ops):
            return " ⊔ ".join(_wrap(op) for op in ops)
        case Not(op):
            return f"¬{_wrap(op)}"
        case Forall(role, filler) | DataForall(role, filler):
            return f"∀{render(role)}.{_wrap(filler)}"
        case Exists(role, filler) | DataExists(role, filler):
            return f"∃{render(role)}.{_wrap(filler)}"
        case Nominal(ind, deg):
            return f"{{{_deg(deg)}/{ind}}}"
        case AtLeast(n, role, filler) | DataAtLeast(n, role, filler):
            return f"(≥ {n} {render(role)}.{_wrap(filler)})"
        case AtMost(n, role, filler) | DataAtMost(n, role, filler):
            return f"(≤ {n} {render(role)}.{_wrap(filler)})"
        case SelfRestriction(role):
            return f"∃{render(role)}.Self"
        case Modified(mod, op):
            return f"{mod}({render(op)})"
        case Weighted(w, op):
            return f"{_deg(w)}·{_wrap(op)}"
        case WeightedSum(summands):
            return " + ".join(f"{_deg(w)}·{_wrap(c)}" for w, c in summands)
    return _render_axiom(node)


def render_body(ax) -> str:
    """An axiom's rendering without the degree bound."""
    text = render(ax)
    if ax.gradable and text.startswith("⟨"):
        text = text[1:text.rindex(" ≥ ")]
    return text


def _graded(text: str, axiom) -> str:
    return f"⟨{text} ≥ {_deg(axiom.degree)}⟩"


def _render_axiom(ax) -> str:
    match ax:
        case ConceptAssertion(ind, concept, _):
            return _graded(f"{ind}:{_wrap(concept)}", ax)
        case RoleAssertion(role, a, b, _):
            return _graded(f"({a},{b}):{render(role)}", ax)
        case NegativeRoleAssertion(role, a, b, _):
            return _graded(f"({a},{b}):¬{render(role)}", ax)
        case DataAssertion(role, a, v, _):
            return _graded(f"({a},{_deg(v)}):{render(role)}", ax)
        case NegativeDataAssertion(role, a, v, _):
            return _graded(f"({a},{_deg(v)}):¬{render(role)}", ax)
        case DifferentIndividuals(a, b):
            return f"{a} ≠ {b}"
        case SameIndividuals(a, b):
            return f"{a} = {b}"
        case ConceptInclusion(sub, sup, _):
            return _graded(f"{_wrap(sub)} ⊑ {_wrap(sup)}", ax)
        case ConceptEquivalence(concepts):
            return " ≡ ".join(_wrap(c) for c in concepts)
        case DisjointConcepts(concepts):
            return f"dis({', '.join(render(c) for c in concepts)})"
        case DisjointUnion(union, parts):
            return f"disUnion({', '.join(render(c) for c in (union, *parts))})"
        case RoleInclusion(chain, sup, _):
            return _graded(f"{' ∘ '.join(render(r) for r in chain)} ⊑ {render(sup)}", ax)
        case DataRoleInclusion(sub, sup, _):
            return _graded(f"{render(sub)} ⊑ {render(sup)}", ax)
        case RoleEquivalence(roles) | DataRoleEquivalence(roles):
            return " ≡ ".join(render(r) for r in roles)
        case Domain(role, concept):
            return f"domain({render(role)}, {render(concept)})"
        case Range(role, filler):
            return f"range({render(role)}, {render(filler)})"
        case Functional(role):
            return f"func({render(role)})"
        case Transitive(role):
            return f"trans({render(role)})"
        case DisjointRoles(roles) | DisjointDataRoles(roles):
            return f"dis({', '.join(render(r) for r in roles)})"
        case Reflexive(role):
            return f"ref({render(role)})"
        case Irreflexive(role):
            return f"irr({render(role)})"
        case Symmetric(role):
            return f"sym({render(role)})"
        case Asymmetric(role):
            return f"asy({render(role)})"
    raise TypeError(f"cannot render {ax!r}")
