"""Parser, serializer and local checks for ``fuzzyLabel`` annotation payloads.

A payload is a single XML element such as::

    <fuzzyOwl2 fuzzyType="datatype">
      <Datatype type="leftshoulder" a="10" b="30" />
    </fuzzyOwl2>

:func:`parse_annotation` returns one of the ``*Payload`` classes below, whose
``fuzzy_type`` class attribute mirrors the root's ``fuzzyType``.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Optional, Union
from xml.sax.saxutils import escape

from . import diagnostics as diag
from .logic import format_number

ROOT_TAG = "fuzzyOwl2"
LOGICS = ("lukasiewicz", "zadeh")
SHAPE_KINDS = ("leftshoulder", "rightshoulder", "triangular", "trapezoidal")
SHAPE_PARAMS = {
    "leftshoulder": ("a", "b"),
    "rightshoulder": ("a", "b"),
    "triangular": ("a", "b", "c"),
    "trapezoidal": ("a", "b", "c", "d"),
}

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)\Z")


class AnnotationSyntaxError(ValueError):
    """Raised for payloads that do not follow the annotation grammar."""

    def __init__(self, message: str):
        super().__init__(message)
        self.diagnostic = diag.error("ANNOTATION_SYNTAX", message)


@dataclass(frozen=True)
class ModifierPayload:
    fuzzy_type: ClassVar[str] = "modifier"
    kind: str  # linear | triangular
    c: Fraction
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None


@dataclass(frozen=True)
class DatatypePayload:
    """A fuzzy datatype; ``k1``/``k2`` are filled in from the OWL range, never parsed."""

    fuzzy_type: ClassVar[str] = "datatype"
    kind: str  # leftshoulder | rightshoulder | triangular | trapezoidal | modified
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[Fraction] = None
    d: Optional[Fraction] = None
    modifier: Optional[str] = None
    base: Optional[str] = None
    k1: Optional[Fraction] = None
    k2: Optional[Fraction] = None

    @property
    def breakpoints(self) -> tuple:
        return tuple(getattr(self, p) for p in SHAPE_PARAMS.get(self.kind, ()))

    def with_range(self, k1, k2) -> "DatatypePayload":
        """Apply the OWL range, defaulting to the extreme breakpoints."""
        points = self.breakpoints
        k1 = min(points) if k1 is None else k1
        k2 = max(points) if k2 is None else k2
        return DatatypePayload(self.kind, self.a, self.b, self.c, self.d,
                               self.modifier, self.base, k1, k2)


@dataclass(frozen=True)
class ConceptPayload:
    fuzzy_type: ClassVar[str] = "concept"
    kind: str  # modified | weighted | weightedSum | nominal
    modifier: Optional[str] = None
    base: Optional[str] = None
    value: Optional[Fraction] = None
    individual: Optional[str] = None
    summands: tuple = ()  # ((weight, base name), ...)

    def references(self) -> tuple:
        if self.kind == "weightedSum":
            return tuple(name for _, name in self.summands)
        return (self.base,) if self.base is not None else ()


@dataclass(frozen=True)
class RolePayload:
    fuzzy_type: ClassVar[str] = "role"
    modifier: str
    base: str
    kind: str = "modified"


@dataclass(frozen=True)
class AxiomPayload:
    fuzzy_type: ClassVar[str] = "axiom"
    degree: Fraction = Fraction(1)


@dataclass(frozen=True)
class OntologyPayload:
    fuzzy_type: ClassVar[str] = "ontology"
    logic: str


FuzzyAnnotation = Union[ModifierPayload, DatatypePayload, ConceptPayload,
                        RolePayload, AxiomPayload, OntologyPayload]


# -- parsing ---------------------------------------------------------------

def parse_number(text: str, what: str = "value") -> Fraction:
    if not isinstance(text, str) or not _NUMBER.match(text.strip()):
        raise AnnotationSyntaxError(f"{what} must be a decimal number, got {text!r}")
    return Fraction(text.strip())


def _attrs(elem, required: tuple, optional: tuple = ()) -> dict:
    got = dict(elem.attrib)
    unknown = sorted(set(got) - set(required) - set(optional))
    if unknown:
        raise AnnotationSyntaxError(f"<{elem.tag}> has unknown attribute(s) {', '.join(unknown)}")
    missing = [name for name in required if name not in got]
    if missing:
        raise AnnotationSyntaxError(f"<{elem.tag}> is missing attribute(s) {', '.join(missing)}")
    return got


def _only_child(root, tag: str, optional: bool = False):
    children = list(root)
    if not children and optional:
        return None
    if len(children) != 1:
        raise AnnotationSyntaxError(f"expected exactly one <{tag}> element, found {len(children)}")
    child = children[0]
    if child.tag != tag:
        raise AnnotationSyntaxError(f"expected <{tag}>, found <{child.tag}>")
    return child


def _no_text(elem):
    for text in (elem.text, *(child.tail for child in elem)):
        if text and text.strip():
            raise AnnotationSyntaxError(f"unexpected text {text.strip()!r} in <{elem.tag}>")
    for child in elem:
        _no_text(child)


def _parse_modifier(root) -> ModifierPayload:
    elem = _only_child(root, "Modifier")
    kind = elem.get("type")
    if kind == "linear":
        attrs = _attrs(elem, ("type", "c"))
        return ModifierPayload("linear", parse_number(attrs["c"], "c"))
    if kind == "triangular":
        attrs = _attrs(elem, ("type", "a", "b", "c"))
        a, b, c = (parse_number(attrs[p], p) for p in "abc")
        return ModifierPayload("triangular", c, a, b)
    raise AnnotationSyntaxError(f"unknown modifier type {kind!r}")


def _parse_datatype(root) -> DatatypePayload:
    elem = _only_child(root, "Datatype")
    kind = elem.get("type")
    if kind == "modified":
        attrs = _attrs(elem, ("type", "modifier", "base"))
        return DatatypePayload("modified", modifier=attrs["modifier"], base=attrs["base"])
    if kind in SHAPE_PARAMS:
        params = SHAPE_PARAMS[kind]
        attrs = _attrs(elem, ("type", *params))
        values = {p: parse_number(attrs[p], p) for p in params}
        return DatatypePayload(kind, **values)
    raise AnnotationSyntaxError(f"unknown datatype type {kind!r}")


def _parse_weighted(elem) -> tuple:
    if elem.tag != "Concept" or elem.get("type") != "weighted":
        raise AnnotationSyntaxError("weighted sums may only contain weighted concepts")
    if len(elem):
        raise AnnotationSyntaxError("weighted concepts have no children")
    attrs = _attrs(elem, ("type", "value", "base"))
    return parse_number(attrs["value"], "value"), attrs["base"]


def _parse_concept(root) -> ConceptPayload:
    elem = _only_child(root, "Concept")
    kind = elem.get("type")
    if kind != "weightedSum" and len(elem):
        raise AnnotationSyntaxError(f"{kind} concepts have no children")
    if kind == "modified":
        attrs = _attrs(elem, ("type", "modifier", "base"))
        return ConceptPayload("modified", modifier=attrs["modifier"], base=attrs["base"])
    if kind == "weighted":
        value, base = _parse_weighted(elem)
        return ConceptPayload("weighted", base=base, value=value)
    if kind == "nominal":
        attrs = _attrs(elem, ("type", "value", "individual"))
        return ConceptPayload("nominal", value=parse_number(attrs["value"], "value"),
                              individual=attrs["individual"])
    if kind == "weightedSum":
        _attrs(elem, ("type",))
        summands = tuple(_parse_weighted(child) for child in elem)
        if not summands:
            raise AnnotationSyntaxError("weighted sum without weighted concepts")
        return ConceptPayload("weightedSum", summands=summands)
    raise AnnotationSyntaxError(f"unknown concept type {kind!r}")


def _parse_role(root) -> RolePayload:
    elem = _only_child(root, "Role")
    if elem.get("type") != "modified":
        raise AnnotationSyntaxError(f"unknown role type {elem.get('type')!r}")
    attrs = _attrs(elem, ("type", "modifier", "base"))
    return RolePayload(attrs["modifier"], attrs["base"])


def _parse_axiom(root) -> AxiomPayload:
    elem = _only_child(root, "Degree", optional=True)
    if elem is None:
        return AxiomPayload()
    attrs = _attrs(elem, ("value",))
    return AxiomPayload(parse_number(attrs["value"], "degree"))


def _parse_ontology(root) -> OntologyPayload:
    elem = _only_child(root, "FuzzyLogic")
    logic = _attrs(elem, ("logic",))["logic"]
    if logic not in LOGICS:
        raise AnnotationSyntaxError(f"fuzzy logic must be one of {', '.join(LOGICS)}, got {logic!r}")
    return OntologyPayload(logic)


_PARSERS = {
    "modifier": _parse_modifier,
    "datatype": _parse_datatype,
    "concept": _parse_concept,
    "role": _parse_role,
    "axiom": _parse_axiom,
    "ontology": _parse_ontology,
}


def parse_annotation(text: str) -> FuzzyAnnotation:
    """Parse one ``<fuzzyOwl2>`` payload; raises :class:`AnnotationSyntaxError`."""
    if not isinstance(text, str):
        raise AnnotationSyntaxError("annotation payload must be a string")
    if "<!" in text or "<?" in text:
        raise AnnotationSyntaxError("declarations and processing instructions are not allowed")
    try:
        root = ET.fromstring(text.strip())
    except (ET.ParseError, ValueError) as exc:
        raise AnnotationSyntaxError(f"malformed XML: {exc}") from None
    if root.tag.lower() != ROOT_TAG.lower():
        raise AnnotationSyntaxError(f"root element must be <{ROOT_TAG}>, found <{root.tag}>")
    fuzzy_type = _attrs(root, ("fuzzyType",))["fuzzyType"]
    if fuzzy_type not in _PARSERS:
        raise AnnotationSyntaxError(f"unknown fuzzyType {fuzzy_type!r}")
    _no_text(root)
    return _PARSERS[fuzzy_type](root)


# -- serialization ---------------------------------------------------------

def _tag(name: str, attrs: list, children: str = None) -> str:
    rendered = "".join(f' {key}="{escape(value, {chr(34): "&quot;"})}"' for key, value in attrs)
    if children is None:
        return f"<{name}{rendered} />"
    return f"<{name}{rendered}>{children}</{name}>"


def _num(value) -> str:
    return format_number(value)


def _body(a: FuzzyAnnotation) -> str:
    if isinstance(a, ModifierPayload):
        if a.kind == "linear":
            return _tag("Modifier", [("type", "linear"), ("c", _num(a.c))])
        return _tag("Modifier", [("type", "triangular"), ("a", _num(a.a)),
                                 ("b", _num(a.b)), ("c", _num(a.c))])
    if isinstance(a, DatatypePayload):
        if a.kind == "modified":
            return _tag("Datatype", [("type", "modified"), ("modifier", a.modifier), ("base", a.base)])
        params = [(p, _num(getattr(a, p))) for p in SHAPE_PARAMS[a.kind]]
        return _tag("Datatype", [("type", a.kind), *params])
    if isinstance(a, ConceptPayload):
        if a.kind == "modified":
            return _tag("Concept", [("type", "modified"), ("modifier", a.modifier), ("base", a.base)])
        if a.kind == "weighted":
            return _tag("Concept", [("type", "weighted"), ("value", _num(a.value)), ("base", a.base)])
        if a.kind == "nominal":
            return _tag("Concept", [("type", "nominal"), ("value", _num(a.value)),
                                    ("individual", a.individual)])
        inner = "".join(_tag("Concept", [("type", "weighted"), ("value", _num(w)), ("base", base)])
                        for w, base in a.summands)
        return _tag("Concept", [("type", "weightedSum")], inner)
    if isinstance(a, RolePayload):
        return _tag("Role", [("type", a.kind), ("modifier", a.modifier), ("base", a.base)])
    if isinstance(a, AxiomPayload):
        return _tag("Degree", [("value", _num(a.degree))])
    if isinstance(a, OntologyPayload):
        return _tag("FuzzyLogic", [("logic", a.logic)])
    raise TypeError(f"not an annotation payload: {a!r}")


def serialize_annotation(a: FuzzyAnnotation) -> str:
    return _tag(ROOT_TAG, [("fuzzyType", a.fuzzy_type)], _body(a))


def canonical(text: str) -> str:
    """Round-trip ``text`` through the parser into its canonical spelling."""
    return serialize_annotation(parse_annotation(text))


# -- local checks ----------------------------------------------------------

def _in_unit(value) -> bool:
    return 0 <= value <= 1


def _positive_unit(value) -> bool:
    return 0 < value <= 1


def _fmt(*values) -> str:
    return ", ".join(format_number(v) for v in values)


def _check_modifier(a: ModifierPayload) -> list:
    out = []
    if a.kind == "linear":
        if a.c < 0:
            return [diag.error("MOD_RANGE", f"linear modifier needs c >= 0, got c = {_fmt(a.c)}",
                               values=(a.c,))]
        pa, pb = a.c / (a.c + 1), 1 / (a.c + 1)
        label = f"linear(c = {_fmt(a.c)}) with derived a = {_fmt(pa)}, b = {_fmt(pb)}"
    else:
        pa, pb = a.a, a.b
        label = f"triangular({_fmt(pa, pb, a.c)})"
    if not all(_in_unit(v) for v in (pa, pb, a.c)):
        out.append(diag.error("MOD_RANGE", f"modifier parameters outside [0, 1]: {label}",
                              values=(pa, pb, a.c)))
    if a.kind == "triangular" and not pa <= pb <= a.c:
        out.append(diag.error("MOD_ORDER", f"breakpoints not ordered: {label}", values=(pa, pb, a.c)))
    if (pb == 0) != (pa == 1):
        out.append(diag.info("MOD_B0_IFF_A1", f"'b = 0 iff a = 1' fails for {label}", values=(pa, pb)))
    if (pb == 1) != (a.c == 1):
        out.append(diag.info("MOD_B1_IFF_C1", f"'b = 1 iff c = 1' fails for {label}", values=(pb, a.c)))
    return out


def _check_datatype(a: DatatypePayload) -> list:
    if a.kind == "modified":
        return []
    points = a.breakpoints
    chain = [a.k1 if a.k1 is not None else min(points), *points,
             a.k2 if a.k2 is not None else max(points)]
    if any(p > q for p, q in zip(chain, chain[1:])):
        names = ["k1", *SHAPE_PARAMS[a.kind], "k2"]
        shown = ", ".join(f"{n} = {format_number(v)}" for n, v in zip(names, chain))
        return [diag.error("DT_ORDER", f"{a.kind} breakpoints not ordered: {shown}", values=tuple(chain))]
    return []


def _check_concept(a: ConceptPayload) -> list:
    out = []
    if a.kind in ("weighted", "nominal") and not _positive_unit(a.value):
        out.append(diag.error("WEIGHT_RANGE", f"{a.kind} value {_fmt(a.value)} not in (0, 1]",
                              values=(a.value,)))
    if a.kind == "weightedSum":
        if len(a.summands) < 2:
            out.append(diag.error("WSUM_ARITY", f"weighted sum has k = {len(a.summands)} < 2",
                                  values=(len(a.summands),)))
        for weight, base in a.summands:
            if not _positive_unit(weight):
                out.append(diag.error("WEIGHT_RANGE", f"weight {_fmt(weight)} of {base} not in (0, 1]",
                                      values=(weight,)))
        total = sum((w for w, _ in a.summands), Fraction(0))
        if total > 1:
            out.append(diag.error("WSUM_TOTAL", f"weights sum {_fmt(total)} > 1", values=(total,)))
    return out


def validate_local(a: FuzzyAnnotation) -> list:
    """Every restriction violated by ``a`` that needs no cross-references."""
    if isinstance(a, ModifierPayload):
        return _check_modifier(a)
    if isinstance(a, DatatypePayload):
        return _check_datatype(a)
    if isinstance(a, ConceptPayload):
        return _check_concept(a)
    if isinstance(a, AxiomPayload) and not _positive_unit(a.degree):
        return [diag.error("DEGREE_RANGE", f"degree {_fmt(a.degree)} not in (0, 1]", values=(a.degree,))]
    return []
