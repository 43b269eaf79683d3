"""Random small models and expressions for oracle comparisons."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as F

from fuzzyowl import dl
from fuzzyowl.evaluator import FiniteInterpretation
from fuzzyowl.kb import FuzzyKB
from fuzzyowl.logic import Family, MembershipShape, ModifierDef

from oracles import BruteForce

ATOMS = ("A", "B", "C")
ROLES = ("R", "S")
DEGREES = [F(0), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(1)]
LO, HI = 0, 100


@dataclass
class Case:
    family: Family
    interp: FiniteInterpretation
    kb: FuzzyKB
    oracle: BruteForce


def _shape(rng):
    kind = rng.choice(["left", "right", "triangular", "trapezoidal"])
    n = {"left": 2, "right": 2, "triangular": 3, "trapezoidal": 4}[kind]
    pts = sorted(rng.randint(LO, HI) for _ in range(n))
    return getattr(MembershipShape, kind)(LO, HI, *pts)


def _modifier(rng):
    if rng.random() < 0.5:
        return ModifierDef.linear(F(rng.randint(1, 40), 10))
    a, b, c = sorted(F(rng.randint(0, 10), 10) for _ in range(3))
    return ModifierDef.triangular(a, b, c)


def random_case(rng: random.Random, family=None) -> Case:
    fam = Family(family) if family is not None else rng.choice(list(Family))
    domain = tuple(f"e{i}" for i in range(rng.randint(1, 4)))
    values = tuple(sorted(rng.sample(range(LO, HI + 1), rng.randint(0, 5))))
    deg = lambda: rng.choice(DEGREES) if rng.random() < 0.7 else F(0)
    concepts = {(a, x): d for a in ATOMS for x in domain if (d := deg())}
    roles = {(r, x, y): d for r in ROLES for x in domain for y in domain if (d := deg())}
    croles = {("T", x, v): d for x in domain for v in values if (d := deg())}
    # keep every name tabulated even when all its degrees came out zero
    concepts.setdefault((ATOMS[0], domain[0]), F(0))
    for a in ATOMS:
        concepts.setdefault((a, domain[-1]), F(0))
    for r in ROLES:
        roles.setdefault((r, domain[0], domain[-1]), F(0))
    individuals = {"a": rng.choice(domain), "b": rng.choice(domain)}
    interp = FiniteInterpretation(domain, values, individuals, concepts, roles, croles)
    kb = FuzzyKB(
        logic=fam,
        modifiers={"m1": _modifier(rng), "m2": _modifier(rng)},
        datatypes={"D1": _shape(rng), "D2": _shape(rng)},
        concepts={"Def": random_concept(rng, 1, data=bool(values), names=ATOMS)},
        roles={"VR": dl.ModifiedRole("m1", dl.RoleName("R"))},
        declarations={"DataProperty": frozenset({"T"})},
    )
    oracle = BruteForce(fam.value, domain, values, concepts, roles, croles, individuals, kb)
    return Case(fam, interp, kb, oracle)


def random_role(rng, depth=1):
    r = rng.random()
    if r < 0.55 or depth <= 0:
        return dl.RoleName(rng.choice(ROLES))
    if r < 0.7:
        return dl.InverseRole(dl.RoleName(rng.choice(ROLES)))
    if r < 0.8:
        return dl.RoleName("VR")
    if r < 0.9:
        return dl.ModifiedRole("m2", dl.RoleName(rng.choice(ROLES)))
    return rng.choice([dl.TopRole(), dl.BottomRole()])


def random_datatype(rng):
    r = rng.random()
    if r < 0.5:
        return dl.DatatypeName(rng.choice(["D1", "D2"]))
    if r < 0.7:
        return dl.ModifiedDatatype("m1", dl.DatatypeName("D1"))
    if r < 0.85:
        lo = F(rng.randint(LO, HI))
        return dl.CrispRange(lo=lo, hi=lo + rng.randint(0, 50), integer=rng.random() < 0.5)
    return dl.DatatypeName("xsd:integer")


def _weights(rng, n):
    cuts = sorted(rng.randint(1, 19) for _ in range(n - 1))
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, 20])]
    return [F(p, 20) for p in parts]


def random_concept(rng, depth=3, data=True, names=ATOMS + ("Def",)):
    """A concept of nesting depth at most ``depth`` over the generator vocabulary."""
    if depth <= 0 or rng.random() < 0.2:
        pick = rng.random()
        if pick < 0.75:
            return dl.Atomic(rng.choice(names))
        if pick < 0.85:
            return dl.Nominal(rng.choice(["a", "b"]), rng.choice(DEGREES[1:]))
        return rng.choice([dl.Top(), dl.Bottom()])
    sub = lambda: random_concept(rng, depth - 1, data, names)
    kinds = ["and", "or", "not", "all", "some", "atleast", "atmost", "self", "mod", "weighted", "wsum"]
    if data:
        kinds += ["dall", "dsome", "datleast", "datmost"]
    kind = rng.choice(kinds)
    if kind == "and":
        return dl.And(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == "or":
        return dl.Or(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == "not":
        return dl.Not(sub())
    if kind == "all":
        return dl.Forall(random_role(rng), sub())
    if kind == "some":
        return dl.Exists(random_role(rng), sub())
    if kind == "atleast":
        return dl.AtLeast(rng.randint(1, 3), random_role(rng), sub())
    if kind == "atmost":
        return dl.AtMost(rng.randint(0, 2), random_role(rng), sub())
    if kind == "self":
        return dl.SelfRestriction(random_role(rng))
    if kind == "mod":
        return dl.Modified(rng.choice(["m1", "m2"]), sub())
    if kind == "weighted":
        return dl.Weighted(rng.choice(DEGREES[1:]), sub())
    if kind == "wsum":
        n = rng.randint(2, 3)
        return dl.WeightedSum(tuple(zip(_weights(rng, n), (sub() for _ in range(n)))))
    t = dl.DataRoleName("T")
    if kind == "dall":
        return dl.DataForall(t, random_datatype(rng))
    if kind == "dsome":
        return dl.DataExists(t, random_datatype(rng))
    if kind == "datleast":
        return dl.DataAtLeast(rng.randint(1, 3), t, random_datatype(rng))
    return dl.DataAtMost(rng.randint(0, 2), t, random_datatype(rng))


def random_axiom(rng, data=True):
    concept = lambda: random_concept(rng, 2, data)
    kind = rng.choice(["ca", "ra", "gci", "rin", "chain", "dom", "rng", "func", "eq", "dis",
                       "trans", "sym", "ref", "irr"])
    d = rng.choice(DEGREES[1:])
    r = dl.RoleName(rng.choice(ROLES))
    if kind == "ca":
        return dl.ConceptAssertion(rng.choice(["a", "b"]), concept(), d)
    if kind == "ra":
        return dl.RoleAssertion(random_role(rng), "a", "b", d)
    if kind == "gci":
        return dl.ConceptInclusion(concept(), concept(), d)
    if kind == "rin":
        return dl.RoleInclusion((random_role(rng),), r, d)
    if kind == "chain":
        return dl.RoleInclusion(tuple(dl.RoleName(rng.choice(ROLES)) for _ in range(rng.randint(2, 3))), r, d)
    if kind == "dom":
        return dl.Domain(r, concept())
    if kind == "rng":
        return dl.Range(r, concept())
    if kind == "func":
        return dl.Functional(r)
    if kind == "eq":
        return dl.ConceptEquivalence((concept(), concept()))
    if kind == "dis":
        return dl.DisjointConcepts((concept(), concept()))
    return {"trans": dl.Transitive, "sym": dl.Symmetric, "ref": dl.Reflexive, "irr": dl.Irreflexive}[kind](r)
