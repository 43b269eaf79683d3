"""Fuzzy SROIQ(D) semantics over explicit finite interpretations.

Quantifiers over the abstract domain become max/min over ``domain``; concrete
quantifiers range over the interpretation's finite ``values`` list.  With
rational table entries every result is an exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Mapping, Optional

from . import dl
from .kb import FuzzyKB
from .logic import (Family, MembershipShape, apply_modifier, format_number, membership,
                    to_number)

TOLERANCE = 1e-12


class EvaluationError(ValueError):
    """An expression refers to something the interpretation cannot answer."""


def _in_unit(v) -> bool:
    return 0 <= v <= 1


@dataclass(frozen=True, eq=False)
class FiniteInterpretation:
    """Explicit finite fuzzy interpretation.

    ``concepts`` maps ``(concept, element)``, ``roles`` maps ``(role, x, y)``
    and ``croles`` maps ``(role, x, value)`` to degrees; absent pairs of a
    tabulated name have degree 0.
    """

    domain: tuple
    values: tuple = ()
    individuals: Mapping = field(default_factory=dict)
    concepts: Mapping = field(default_factory=dict)
    roles: Mapping = field(default_factory=dict)
    croles: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise ValueError("the interpretation domain must not be empty")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("duplicate domain elements")
        values = tuple(to_number(v) for v in self.values)
        object.__setattr__(self, "values", values)
        for attr in ("individuals", "concepts", "roles", "croles"):
            object.__setattr__(self, attr, MappingProxyType(dict(getattr(self, attr))))
        elements = set(self.domain)
        for name, target in self.individuals.items():
            if target not in elements:
                raise ValueError(f"individual {name} maps to {target!r}, which is not in the domain")
        for key, deg in self.concepts.items():
            self._check(key, deg, key[1:], ())
        for key, deg in self.roles.items():
            self._check(key, deg, key[1:], ())
        value_set = set(values)
        for key, deg in self.croles.items():
            self._check(key, deg, key[1:2], ())
            if to_number(key[2]) not in value_set:
                raise ValueError(f"value {key[2]} in {key[0]} is not in the value list")
        object.__setattr__(self, "_concept_names", frozenset(k[0] for k in self.concepts))
        object.__setattr__(self, "_role_names", frozenset(k[0] for k in self.roles))
        object.__setattr__(self, "_crole_names", frozenset(k[0] for k in self.croles))
        # nonzero entries per (name, subject), for quantifiers over atomic roles
        out, cout = {}, {}
        for (r, x, y), deg in self.roles.items():
            if deg > 0:
                out.setdefault((r, x), []).append((y, deg))
        for (t, x, v), deg in self.croles.items():
            if deg > 0:
                cout.setdefault((t, x), []).append((to_number(v), deg))
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_cout", cout)

    def _check(self, key, deg, elements, _):
        if not _in_unit(deg):
            raise ValueError(f"degree {deg} for {key} outside [0, 1]")
        for e in elements:
            if e not in self.domain:
                raise ValueError(f"element {e!r} in {key[0]} is not in the domain")

    def element(self, name):
        if name in self.individuals:
            return self.individuals[name]
        if name in self.domain:
            return name
        raise EvaluationError(f"individual {name} is not interpreted")

    def has_concept(self, name) -> bool:
        return name in self._concept_names

    def has_role(self, name) -> bool:
        return name in self._role_names

    def has_crole(self, name) -> bool:
        return name in self._crole_names

    def successors(self, name, x) -> list:
        return self._out.get((name, x), [])

    def concrete_successors(self, name, x) -> list:
        return self._cout.get((name, x), [])


@dataclass
class TraceNode:
    expression: str
    binding: object
    degree: object = None
    children: list = field(default_factory=list)

    def lines(self, depth: int = 0) -> list:
        out = [f"{'  ' * depth}{self.expression} @ {self.binding} = {format_number(self.degree)}"]
        for child in self.children:
            out.extend(child.lines(depth + 1))
        return out


@dataclass(frozen=True)
class EvalResult:
    degree: object
    trace: Optional[TraceNode] = None


@dataclass(frozen=True)
class AxiomCheck:
    axiom: dl.Axiom
    holds: bool
    degree: object = None  # left-hand degree for graded axioms


@dataclass(frozen=True)
class KBReport:
    results: tuple
    satisfied: bool

    @property
    def failures(self) -> tuple:
        return tuple(r for r in self.results if not r.holds)


def _close(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= TOLERANCE
    return a == b


def _geq(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return a >= b - TOLERANCE
    return a >= b


def _is_builtin_number(name: str) -> bool:
    return name.startswith(("xsd:", "owl:", "rdfs:"))


class Evaluator:
    def __init__(self, interp: FiniteInterpretation, kb: Optional[FuzzyKB] = None,
                 family: Optional[Family] = None, trace: bool = False):
        self.i = interp
        self.kb = kb if kb is not None else FuzzyKB()
        self.f = Family(family) if family is not None else self.kb.logic
        self.told = {}
        for ax in self.kb.axioms:
            if isinstance(ax, dl.ConceptEquivalence) and len(ax.concepts) == 2:
                first, second = ax.concepts
                if isinstance(first, dl.Atomic) and first.name not in self.told:
                    self.told[first.name] = second
        self._active = set()
        self._memo = {}  # inputs are immutable, so degrees can be cached
        self._stack = [TraceNode("root", None)] if trace else None
        self.one = Fraction(1)
        self.zero = Fraction(0)

    # helpers ---------------------------------------------------------------

    def _fold(self, op, items):
        items = list(items)
        acc = items[0]
        for item in items[1:]:
            acc = op(self.f, acc, item)
        return acc

    def _tnorm(self, x, y):
        return self.f.tnorm(x, y)

    def modifier(self, name: str):
        try:
            return self.kb.modifiers[name]
        except KeyError:
            raise EvaluationError(f"modifier {name} is not defined") from None

    def _element(self, x):
        if x not in self.i.domain:
            raise EvaluationError(f"element {x!r} is not in the domain")
        return x

    # roles -------------------------------------------------------------------

    def role(self, r, x, y):
        if isinstance(r, dl.RoleName):
            name = r.name
            if name in self.kb.roles:
                return self.role(self.kb.roles[name], x, y)
            if self.i.has_role(name):
                return self.i.roles.get((name, x, y), self.zero)
            if name in self.kb.declared("ObjectProperty"):
                return self.zero
            raise EvaluationError(f"role {name} is not interpreted")
        if isinstance(r, dl.InverseRole):
            return self.role(r.role, y, x)
        if isinstance(r, dl.TopRole):
            return self.one
        if isinstance(r, dl.BottomRole):
            return self.zero
        if isinstance(r, dl.ModifiedRole):
            inner = self.crole(r.role, x, y) if isinstance(r.role, dl.DataRoleName) else self.role(r.role, x, y)
            return apply_modifier(self.modifier(r.modifier), inner)
        if isinstance(r, dl.DataRoleName):
            return self.crole(r, x, y)
        raise EvaluationError(f"cannot evaluate role {dl.render(r)}")

    def crole(self, t, x, v):
        if isinstance(t, dl.ModifiedRole):
            return self.role(t, x, v)
        if not isinstance(t, dl.DataRoleName):
            raise EvaluationError(f"cannot evaluate concrete role {dl.render(t)}")
        name = t.name
        if name in self.kb.roles:
            return self.role(self.kb.roles[name], x, v)
        if self.i.has_crole(name):
            return self.i.croles.get((name, x, to_number(v)), self.zero)
        if name in self.kb.declared("DataProperty"):
            return self.zero
        raise EvaluationError(f"concrete role {name} is not interpreted")

    # datatypes ---------------------------------------------------------------

    def datatype(self, d, v):
        if isinstance(d, MembershipShape):
            return membership(d, v)
        if isinstance(d, dl.DatatypeName):
            if d.name in self.kb.datatypes:
                return self.datatype(self.kb.datatypes[d.name], v)
            if _is_builtin_number(d.name):
                if d.name in ("xsd:integer", "xsd:int", "xsd:long", "xsd:nonNegativeInteger"):
                    ok = Fraction(v).denominator == 1 and (d.name != "xsd:nonNegativeInteger" or v >= 0)
                    return self.one if ok else self.zero
                return self.one
            raise EvaluationError(f"datatype {d.name} is not defined")
        if isinstance(d, dl.ModifiedDatatype):
            return apply_modifier(self.modifier(d.modifier), self.datatype(d.base, v))
        if isinstance(d, dl.CrispRange):
            inside = (d.lo is None or v >= d.lo) and (d.hi is None or v <= d.hi)
            if d.integer:
                inside = inside and Fraction(v).denominator == 1
            return self.one if inside else self.zero
        if isinstance(d, dl.DataValues):
            return self.one if any(v == w for w in d.values) else self.zero
        raise EvaluationError(f"cannot evaluate datatype {dl.render(d)}")

    def _tabulated(self, r) -> bool:
        return isinstance(r, (dl.RoleName, dl.DataRoleName)) and r.name not in self.kb.roles

    def _nonzero(self, r, x) -> list:
        """(y, R(x, y)) for every y with R(x, y) > 0."""
        if self._tabulated(r):
            if isinstance(r, dl.DataRoleName):
                if self.i.has_crole(r.name):
                    return self.i.concrete_successors(r.name, x)
            elif self.i.has_role(r.name):
                return self.i.successors(r.name, x)
        targets = self.i.values if self._data_role(r) else self.i.domain
        return [(y, deg) for y in targets if (deg := self.role(r, x, y)) > 0]

    def _data_role(self, r) -> bool:
        while isinstance(r, dl.ModifiedRole):
            r = r.role
        return isinstance(r, dl.DataRoleName)

    def _data_scores(self, t, d, x) -> list:
        # T(x, v) = 0 contributes 0 to every sup and 1 to every inf, so the
        # datatype is only consulted where the role holds to some degree.
        return [(deg, self.datatype(d, v)) for v, deg in self._nonzero(t, x)]

    # concepts ----------------------------------------------------------------

    def concept(self, c, x):
        if self._stack is None:
            key = (c, x)
            if key not in self._memo:
                self._element(x)
                self._memo[key] = self._concept(c, x)
            return self._memo[key]
        self._element(x)
        node = TraceNode(dl.render(c), x)
        self._stack[-1].children.append(node)
        self._stack.append(node)
        try:
            node.degree = self._concept(c, x)
        finally:
            self._stack.pop()
        return node.degree

    def _named(self, name, x):
        if name in self.kb.concepts:
            return self._guarded(name, self.kb.concepts[name], x)
        if self.i.has_concept(name):
            return self.i.concepts.get((name, x), self.zero)
        if name in self.told:
            return self._guarded(name, self.told[name], x)
        if name in self.kb.declared("Class"):
            return self.zero
        raise EvaluationError(f"concept {name} is not interpreted")

    def _guarded(self, name, definition, x):
        key = (name, x)
        if key in self._active:
            raise EvaluationError(f"definition of {name} is cyclic")
        self._active.add(key)
        try:
            return self.concept(definition, x)
        finally:
            self._active.discard(key)

    def _scores(self, r, c, x) -> list:
        return [self._tnorm(self.role(r, x, y), self.concept(c, y)) for y in self.i.domain]

    def _concept(self, c, x):
        f = self.f
        if isinstance(c, dl.Atomic):
            return self._named(c.name, x)
        if isinstance(c, dl.Top):
            return self.one
        if isinstance(c, dl.Bottom):
            return self.zero
        if isinstance(c, dl.And):
            return self._fold(type(f).tnorm, (self.concept(op, x) for op in c.operands))
        if isinstance(c, dl.Or):
            return self._fold(type(f).tconorm, (self.concept(op, x) for op in c.operands))
        if isinstance(c, dl.Not):
            return f.negation(self.concept(c.operand, x))
        if isinstance(c, dl.Forall):
            return min((f.implication(deg, self.concept(c.filler, y)) for y, deg in self._nonzero(c.role, x)),
                       default=self.one)
        if isinstance(c, dl.Exists):
            return max((f.tnorm(deg, self.concept(c.filler, y)) for y, deg in self._nonzero(c.role, x)),
                       default=self.zero)
        if isinstance(c, dl.DataForall):
            return min((f.implication(t, d) for t, d in self._data_scores(c.role, c.range, x)),
                       default=self.one)
        if isinstance(c, dl.DataExists):
            return max((f.tnorm(t, d) for t, d in self._data_scores(c.role, c.range, x)),
                       default=self.zero)
        if isinstance(c, dl.Nominal):
            return c.degree if self.i.element(c.individual) == x else self.zero * c.degree
        if isinstance(c, (dl.AtLeast, dl.AtMost)):
            scores = self._scores(c.role, c.filler, x)
            return self._cardinality(c, scores)
        if isinstance(c, (dl.DataAtLeast, dl.DataAtMost)):
            scores = [f.tnorm(t, d) for t, d in self._data_scores(c.role, c.range, x)]
            return self._cardinality(c, scores + [self.zero] * (len(self.i.values) - len(scores)))
        if isinstance(c, dl.SelfRestriction):
            return self.role(c.role, x, x)
        if isinstance(c, dl.Modified):
            return apply_modifier(self.modifier(c.modifier), self.concept(c.operand, x))
        if isinstance(c, dl.Weighted):
            return c.weight * self.concept(c.operand, x)
        if isinstance(c, dl.WeightedSum):
            return sum((w * self.concept(op, x) for w, op in c.summands), self.zero)
        raise EvaluationError(f"cannot evaluate concept {dl.render(c)}")

    def _cardinality(self, c, scores: list):
        # Distinctness is crisp, so the sup over m pairwise-distinct witnesses
        # of min_i g(y_i) is the m-th largest score; the inf for <= n is the
        # implication of the (n+1)-th largest score into 0.
        ranked = sorted(scores, reverse=True)
        if isinstance(c, (dl.AtLeast, dl.DataAtLeast)):
            return ranked[c.n - 1] if c.n <= len(ranked) else self.zero
        if c.n + 1 > len(ranked):
            return self.one
        return self.f.implication(ranked[c.n], self.zero)

    # axioms ------------------------------------------------------------------

    def _pairs(self):
        return itertools.product(self.i.domain, repeat=2)

    def _inclusion(self, sub, sup):
        return min((self.f.implication(self.concept(sub, x), self.concept(sup, x)) for x in self.i.domain),
                   default=self.one)

    def _chain(self, chain, x, z):
        """sup over intermediate elements of R1(x, y1) ⊗ ... ⊗ Rm(y_{m-1}, z)."""
        if len(chain) == 1:
            return self.role(chain[0], x, z)
        best = self.zero
        for mids in itertools.product(self.i.domain, repeat=len(chain) - 1):
            path = (x, *mids, z)
            value = self._fold(type(self.f).tnorm,
                               (self.role(r, path[k], path[k + 1]) for k, r in enumerate(chain)))
            best = max(best, value)
        return best

    def check(self, ax) -> AxiomCheck:
        f, I = self.f, self.i
        if isinstance(ax, dl.ConceptAssertion):
            d = self.concept(ax.concept, I.element(ax.individual))
        elif isinstance(ax, dl.RoleAssertion):
            d = self.role(ax.role, I.element(ax.subject), I.element(ax.object))
        elif isinstance(ax, dl.NegativeRoleAssertion):
            d = f.negation(self.role(ax.role, I.element(ax.subject), I.element(ax.object)))
        elif isinstance(ax, dl.DataAssertion):
            d = self.crole(ax.role, I.element(ax.subject), ax.value)
        elif isinstance(ax, dl.NegativeDataAssertion):
            d = f.negation(self.crole(ax.role, I.element(ax.subject), ax.value))
        elif isinstance(ax, dl.ConceptInclusion):
            d = self._inclusion(ax.sub, ax.sup)
        elif isinstance(ax, dl.RoleInclusion):
            d = min((f.implication(self._chain(ax.chain, x, z), self.role(ax.sup, x, z))
                     for x, z in self._pairs()), default=self.one)
        elif isinstance(ax, dl.DataRoleInclusion):
            d = min((f.implication(self.crole(ax.sub, x, v), self.crole(ax.sup, x, v))
                     for x in I.domain for v in I.values), default=self.one)
        elif isinstance(ax, (dl.Domain, dl.Range, dl.Functional)):
            inner = self.check(ax.reduction())
            return AxiomCheck(ax, inner.holds, inner.degree)
        else:
            return AxiomCheck(ax, self._structural(ax))
        return AxiomCheck(ax, _geq(d, ax.degree), d)

    def _all_equal(self, values) -> bool:
        values = list(values)
        return all(_close(values[0], v) for v in values[1:])

    def _structural(self, ax) -> bool:
        I = self.i
        if isinstance(ax, dl.DifferentIndividuals):
            return I.element(ax.first) != I.element(ax.second)
        if isinstance(ax, dl.SameIndividuals):
            return I.element(ax.first) == I.element(ax.second)
        if isinstance(ax, dl.ConceptEquivalence):
            return all(self._all_equal(self.concept(c, x) for c in ax.concepts) for x in I.domain)
        if isinstance(ax, dl.DisjointConcepts):
            return all(_close(min(self.concept(c, x) for c in ax.concepts), 0) for x in I.domain)
        if isinstance(ax, dl.DisjointUnion):
            return (self._structural(dl.DisjointConcepts(ax.parts))
                    and self._structural(dl.ConceptEquivalence((ax.union, dl.Or(ax.parts)))))
        if isinstance(ax, dl.RoleEquivalence):
            return all(self._all_equal(self.role(r, x, y) for r in ax.roles) for x, y in self._pairs())
        if isinstance(ax, dl.DataRoleEquivalence):
            return all(self._all_equal(self.crole(t, x, v) for t in ax.roles)
                       for x in I.domain for v in I.values)
        if isinstance(ax, dl.Transitive):
            r = ax.role
            return all(_geq(self.role(r, x, y), self._tnorm(self.role(r, x, z), self.role(r, z, y)))
                       for x, y, z in itertools.product(I.domain, repeat=3))
        if isinstance(ax, dl.DisjointRoles):
            return all(_close(min(self.role(s, x, y) for s in ax.roles), 0) for x, y in self._pairs())
        if isinstance(ax, dl.DisjointDataRoles):
            return all(_close(min(self.crole(t, x, v) for t in ax.roles), 0)
                       for x in I.domain for v in I.values)
        if isinstance(ax, dl.Reflexive):
            return all(_close(self.role(ax.role, x, x), 1) for x in I.domain)
        if isinstance(ax, dl.Irreflexive):
            return all(_close(self.role(ax.role, x, x), 0) for x in I.domain)
        if isinstance(ax, dl.Symmetric):
            return all(_close(self.role(ax.role, x, y), self.role(ax.role, y, x)) for x, y in self._pairs())
        if isinstance(ax, dl.Asymmetric):
            return all(not self.role(ax.role, x, y) > 0 or _close(self.role(ax.role, y, x), 0)
                       for x, y in self._pairs())
        raise EvaluationError(f"cannot check axiom {ax!r}")

    @property
    def trace_root(self) -> Optional[TraceNode]:
        if self._stack is None or not self._stack[0].children:
            return None
        return self._stack[0].children[-1]


# -- functional interface ----------------------------------------------------

def eval_concept(I: FiniteInterpretation, family, c, x, kb: Optional[FuzzyKB] = None,
                 trace: bool = False):
    """Degree of ``x`` in ``c``; with ``trace=True`` returns an :class:`EvalResult`."""
    ev = Evaluator(I, kb, family, trace=trace)
    degree = ev.concept(c, x)
    return EvalResult(degree, ev.trace_root) if trace else degree


def eval_role(I: FiniteInterpretation, family, r, x, y, kb: Optional[FuzzyKB] = None):
    return Evaluator(I, kb, family).role(r, x, y)


def eval_datatype(kb: Optional[FuzzyKB], d, v):
    """Membership of value ``v`` in datatype ``d`` (a name, shape or modified datatype)."""
    I = FiniteInterpretation(domain=("_",))
    return Evaluator(I, kb).datatype(d, to_number(v))


def check_axiom(I: FiniteInterpretation, family, ax, kb: Optional[FuzzyKB] = None) -> AxiomCheck:
    return Evaluator(I, kb, family).check(ax)


def satisfies_kb(I: FiniteInterpretation, kb: FuzzyKB, family=None) -> KBReport:
    ev = Evaluator(I, kb, family)
    results = tuple(ev.check(ax) for ax in kb.axioms)
    return KBReport(results, all(r.holds for r in results))


def bdb_over_model(I: FiniteInterpretation, kb: Optional[FuzzyKB], assertion, family=None):
    """Degree of the asserted expression in this model (degree bound ignored)."""
    if not isinstance(assertion, (dl.ConceptAssertion, dl.RoleAssertion, dl.NegativeRoleAssertion,
                                  dl.DataAssertion, dl.NegativeDataAssertion)):
        raise TypeError("best degree bounds are defined for assertions only")
    return Evaluator(I, kb, family).check(assertion.crisp()).degree


# -- grid maximisation ---------------------------------------------------------

@dataclass(frozen=True)
class MaxResult:
    params: dict
    degree: object
    element: object


def maximize_degree(template: Callable[[dict], FiniteInterpretation], grid: Mapping, c,
                    kb: Optional[FuzzyKB] = None, family=None, element=None,
                    require_model: bool = True) -> MaxResult:
    """Exhaustive search for the grid point (and element) maximising ``c``.

    Points are visited in lexicographic grid order, elements in domain order;
    the first maximum wins.  With a KB, points whose interpretation is not a
    model of it are skipped unless ``require_model`` is false.
    """
    names = list(grid)
    if not names or any(len(grid[n]) == 0 for n in names):
        raise ValueError("empty grid")
    best = None
    for combo in itertools.product(*(grid[n] for n in names)):
        params = dict(zip(names, combo))
        interp = template(params)
        ev = Evaluator(interp, kb, family)
        if kb is not None and require_model and not all(ev.check(ax).holds for ax in kb.axioms):
            continue
        candidates = [interp.element(element)] if element is not None else interp.domain
        for x in candidates:
            degree = ev.concept(c, x)
            if best is None or degree > best.degree:
                best = MaxResult(params, degree, x)
    if best is None:
        raise ValueError("no grid point yields a model of the knowledge base")
    return best
