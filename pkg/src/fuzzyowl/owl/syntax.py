"""Reader and pretty-printer for a subset of OWL 2 functional-style syntax.

Besides standard ``Declaration(Class(A))`` axioms the reader accepts the
entity shorthand ``Class(A Annotation(fuzzyLabel ...))`` and raw
``<fuzzyOwl2>...</fuzzyOwl2>`` blocks as annotation values, so documents can
be written the way fuzzy ontologies are usually presented.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union


class OwlSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column

    @property
    def location(self) -> str:
        return f"{self.line}:{self.column}" if self.line else "-"


# -- lexer -----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # ( ) NAME INT STRING XML
    value: object
    line: int
    column: int
    datatype: Optional[str] = None
    lang: Optional[str] = None


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<xml><\s*fuzzyOwl2\b.*?<\s*/\s*fuzzyOwl2\s*>)
  | (?P<string>"(?:[^"\\]|\\.)*")(?:\^\^(?P<dt>[A-Za-z_][\w.\-]*(?::[\w.\-]+)?)|@(?P<lang>[A-Za-z][\w\-]*))?
  | (?P<name>[A-Za-z_][\w.\-]*(?::[\w.\-]+)?)
  | (?P<int>\d+)(?![\w.])
    """,
    re.VERBOSE | re.DOTALL | re.IGNORECASE,
)


def _unescape(body: str, line: int, column: int) -> str:
    out, i = [], 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in "\"\\":
                raise OwlSyntaxError(f"invalid escape \\{nxt} in string literal", line, column)
            out.append(nxt)
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def tokenize(text: str) -> list:
    tokens, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise OwlSyntaxError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup if m.lastgroup not in ("dt", "lang") else "string"
        if m.group("string") is not None:
            kind = "string"
        lexeme = m.group(0)
        if kind == "lpar":
            tokens.append(Token("(", "(", line, column))
        elif kind == "rpar":
            tokens.append(Token(")", ")", line, column))
        elif kind == "name":
            tokens.append(Token("NAME", lexeme, line, column))
        elif kind == "int":
            tokens.append(Token("INT", int(lexeme), line, column))
        elif kind == "xml":
            tokens.append(Token("XML", lexeme, line, column))
        elif kind == "string":
            body = m.group("string")[1:-1]
            tokens.append(Token("STRING", _unescape(body, line, column), line, column,
                                m.group("dt"), m.group("lang")))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rfind("\n") + 1
        pos = m.end()
    return tokens


# -- s-expressions ---------------------------------------------------------

@dataclass
class _Node:
    head: str
    args: list
    line: int
    column: int


def _read_tree(tokens: list) -> list:
    stack, top = [], []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind == "NAME" and i + 1 < len(tokens) and tokens[i + 1].kind == "(":
            node = _Node(tok.value, [], tok.line, tok.column)
            (stack[-1].args if stack else top).append(node)
            stack.append(node)
            i += 2
            continue
        if tok.kind == "(":
            raise OwlSyntaxError("parenthesis without a construct name", tok.line, tok.column)
        if tok.kind == ")":
            if not stack:
                raise OwlSyntaxError("unbalanced ')'", tok.line, tok.column)
            stack.pop()
        else:
            (stack[-1].args if stack else top).append(tok)
        i += 1
    if stack:
        node = stack[-1]
        raise OwlSyntaxError(f"unclosed '{node.head}('", node.line, node.column)
    return top


# -- document model --------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Optional[str] = None
    lang: Optional[str] = None

    def number(self) -> Fraction:
        try:
            return Fraction(self.lexical.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"literal {self.lexical!r} is not a number") from None


@dataclass(frozen=True)
class Expr:
    """A complex OWL expression such as ``ObjectSomeValuesFrom(R C)``."""

    head: str
    args: tuple


Term = Union[str, int, Literal, Expr]


@dataclass(frozen=True)
class Annotation:
    property: str
    value: str
    raw: bool = field(default=False, compare=False)  # written as an unquoted XML block

    @property
    def is_fuzzy(self) -> bool:
        return self.property == FUZZY_LABEL


@dataclass(frozen=True)
class Declaration:
    kind: str  # Class | ObjectProperty | DataProperty | NamedIndividual | Datatype | AnnotationProperty
    name: str
    location: str = field(default="-", compare=False)


@dataclass(frozen=True)
class EntityAnnotation:
    subject: str
    annotation: Annotation
    location: str = field(default="-", compare=False)


@dataclass(frozen=True)
class DatatypeDefinition:
    name: str
    range: Term
    location: str = field(default="-", compare=False)

    @property
    def bounds(self) -> tuple:
        """``(base type, minInclusive, maxInclusive)``; bounds may be None."""
        if isinstance(self.range, str):
            return self.range, None, None
        if isinstance(self.range, Expr) and self.range.head == "DatatypeRestriction":
            base, *facets = self.range.args
            found = {}
            for facet, value in zip(facets[::2], facets[1::2]):
                found[_local(facet)] = value.number()
            return base, found.get("minInclusive"), found.get("maxInclusive")
        return None, None, None


@dataclass(frozen=True)
class OwlAxiom:
    kind: str
    args: tuple
    annotations: tuple = ()
    location: str = field(default="-", compare=False)

    @property
    def fuzzy_labels(self) -> tuple:
        return tuple(a.value for a in self.annotations if a.is_fuzzy)


@dataclass(frozen=True)
class Reference:
    name: str
    kind: str
    location: str


@dataclass(frozen=True)
class OwlDocument:
    iri: Optional[str] = None
    annotations: tuple = ()
    declarations: tuple = ()
    entity_annotations: tuple = ()
    datatype_definitions: tuple = ()
    axioms: tuple = ()
    references: tuple = field(default=(), compare=False)

    def declared(self, kind: Optional[str] = None) -> set:
        names = {d.name for d in self.declarations if kind is None or d.kind == kind}
        if kind in (None, "Datatype"):
            names |= {d.name for d in self.datatype_definitions}
        return names

    def undeclared(self) -> list:
        """References to names that are neither declared nor built in, in source order."""
        seen, out = set(), []
        for ref in self.references:
            if is_builtin(ref.name, ref.kind) or ref.name in self.declared(ref.kind):
                continue
            if (ref.name, ref.kind) not in seen:
                seen.add((ref.name, ref.kind))
                out.append(ref)
        return out

    @property
    def fuzzy_annotations(self) -> tuple:
        return tuple(a.value for a in self.annotations if a.is_fuzzy)

    def without_fuzzy_labels(self) -> "OwlDocument":
        """The crisp document a plain OWL 2 tool would see."""
        def keep(notes):
            return tuple(a for a in notes if not a.is_fuzzy)
        return replace(
            self,
            annotations=keep(self.annotations),
            entity_annotations=tuple(e for e in self.entity_annotations if not e.annotation.is_fuzzy),
            axioms=tuple(replace(ax, annotations=keep(ax.annotations)) for ax in self.axioms),
        )


FUZZY_LABEL = "fuzzyLabel"

ENTITY_KINDS = {
    "Class": "Class",
    "ObjectProperty": "ObjectProperty",
    "DataProperty": "DataProperty",
    "DatatypeProperty": "DataProperty",
    "NamedIndividual": "NamedIndividual",
    "Individual": "NamedIndividual",
    "Datatype": "Datatype",
    "AnnotationProperty": "AnnotationProperty",
}

BUILTIN = {
    "Class": {"owl:Thing", "owl:Nothing"},
    "ObjectProperty": {"owl:topObjectProperty", "owl:bottomObjectProperty",
                       "TopObjectProperty", "BottomObjectProperty"},
    "DataProperty": {"owl:topDataProperty", "owl:bottomDataProperty",
                     "TopDataProperty", "BottomDataProperty"},
}


def _local(name: str) -> str:
    return name.split(":", 1)[1] if ":" in name else name


def is_builtin(name: str, kind: str) -> bool:
    if name in BUILTIN.get(kind, ()):
        return True
    if kind in ("Datatype", "AnnotationProperty"):
        return ":" in name or (kind == "AnnotationProperty" and name == FUZZY_LABEL)
    return False


# -- schema ----------------------------------------------------------------
# C class, R object property, T data property, D data range, i individual,
# v literal, n non-negative integer, X property chain or object property.
# A trailing "+" repeats the previous kind one or more times; "?" is optional.

CLASS_CONSTRUCTORS = {
    "ObjectIntersectionOf": "C C+",
    "ObjectUnionOf": "C C+",
    "ObjectComplementOf": "C",
    "ObjectAllValuesFrom": "R C",
    "ObjectSomeValuesFrom": "R C",
    "ObjectHasValue": "R i",
    "ObjectOneOf": "i+",
    "ObjectMinCardinality": "n R C?",
    "ObjectMaxCardinality": "n R C?",
    "ObjectExactCardinality": "n R C?",
    "ObjectExistsSelf": "R",
    "ObjectHasSelf": "R",
    "DataAllValuesFrom": "T D",
    "DataSomeValuesFrom": "T D",
    "DataHasValue": "T v",
    "DataMinCardinality": "n T D?",
    "DataMaxCardinality": "n T D?",
    "DataExactCardinality": "n T D?",
}

DATA_RANGES = {
    "DatatypeRestriction": None,  # handled specially
    "DataOneOf": "v+",
    "DataIntersectionOf": "D D+",
    "DataUnionOf": "D D+",
    "DataComplementOf": "D",
}

AXIOMS = {
    "ClassAssertion": None,  # argument order resolved after reading
    "ObjectPropertyAssertion": "R i i",
    "NegativeObjectPropertyAssertion": "R i i",
    "DataPropertyAssertion": "T i v",
    "NegativeDataPropertyAssertion": "T i v",
    "SameIndividual": "i i+",
    "DifferentIndividuals": "i i+",
    "SubClassOf": "C C",
    "EquivalentClasses": "C C+",
    "DisjointClasses": "C C+",
    "DisjointUnion": "C C C+",
    "SubObjectPropertyOf": "X R",
    "SubDataPropertyOf": "T T",
    "EquivalentObjectProperties": "R R+",
    "EquivalentDataProperties": "T T+",
    "ObjectPropertyDomain": "R C",
    "ObjectPropertyRange": "R C",
    "DataPropertyDomain": "T C",
    "DataPropertyRange": "T D",
    "InverseObjectProperties": "R R",
    "FunctionalObjectProperty": "R",
    "FunctionalDataProperty": "T",
    "InverseFunctionalObjectProperty": "R",
    "TransitiveObjectProperty": "R",
    "DisjointObjectProperties": "R R+",
    "DisjointDataProperties": "T T+",
    "ReflexiveObjectProperty": "R",
    "IrreflexiveObjectProperty": "R",
    "SymmetricObjectProperty": "R",
    "AsymmetricObjectProperty": "R",
}

CHAIN_HEADS = ("ObjectPropertyChain", "subObjectPropertyChain")
_REFERENCE_KIND = {"C": "Class", "R": "ObjectProperty", "T": "DataProperty",
                   "D": "Datatype", "i": "NamedIndividual"}


def _signature(spec: str) -> list:
    return spec.split()


def _loc(item) -> str:
    return f"{item.line}:{item.column}"


class _Reader:
    def __init__(self):
        self.declarations = []
        self.entity_annotations = []
        self.datatype_definitions = []
        self.axioms = []
        self.annotations = []
        self.references = []
        self.pending = {}  # axiom index -> (name, name, node) for ClassAssertion

    # leaves ---------------------------------------------------------------

    def _name(self, item, what: str) -> str:
        if isinstance(item, Token) and item.kind == "NAME":
            return item.value
        raise OwlSyntaxError(f"expected {what} name, found {_describe(item)}", *_pos(item))

    def _ref(self, item, kind: str) -> str:
        name = self._name(item, _REFERENCE_KIND_TEXT[kind])
        self.references.append(Reference(name, kind, _loc(item)))
        return name

    def literal(self, item) -> Literal:
        if isinstance(item, Token) and item.kind == "STRING":
            return Literal(item.value, item.datatype, item.lang)
        if isinstance(item, Token) and item.kind == "INT":
            return Literal(str(item.value), "xsd:integer")
        raise OwlSyntaxError(f"expected a literal, found {_describe(item)}", *_pos(item))

    def integer(self, item) -> int:
        if isinstance(item, Token) and item.kind == "INT":
            return item.value
        raise OwlSyntaxError(f"expected a non-negative integer, found {_describe(item)}", *_pos(item))

    # expressions ----------------------------------------------------------

    def class_expr(self, item) -> Term:
        if not isinstance(item, _Node):
            return self._ref(item, "Class")
        if item.head not in CLASS_CONSTRUCTORS:
            raise OwlSyntaxError(f"unknown class constructor {item.head!r}", item.line, item.column)
        return Expr(item.head, self._args(item, CLASS_CONSTRUCTORS[item.head]))

    def object_property(self, item) -> Term:
        if not isinstance(item, _Node):
            return self._ref(item, "ObjectProperty")
        if item.head != "ObjectInverseOf":
            raise OwlSyntaxError(f"expected an object property, found {item.head}(...)",
                                 item.line, item.column)
        return Expr("ObjectInverseOf", self._args(item, "R"))

    def data_property(self, item) -> str:
        if isinstance(item, _Node):
            raise OwlSyntaxError(f"expected a data property, found {item.head}(...)",
                                 item.line, item.column)
        return self._ref(item, "DataProperty")

    def property_or_chain(self, item) -> Term:
        if isinstance(item, _Node) and item.head in CHAIN_HEADS:
            return Expr("ObjectPropertyChain", self._args(item, "R R+"))
        return self.object_property(item)

    def data_range(self, item) -> Term:
        if not isinstance(item, _Node):
            return self._ref(item, "Datatype")
        if item.head not in DATA_RANGES:
            raise OwlSyntaxError(f"unknown data range {item.head!r}", item.line, item.column)
        if item.head == "DatatypeRestriction":
            if not item.args:
                raise OwlSyntaxError("DatatypeRestriction needs a base datatype", item.line, item.column)
            base = self._ref(item.args[0], "Datatype")
            rest = item.args[1:]
            if not rest or len(rest) % 2:
                raise OwlSyntaxError("DatatypeRestriction needs facet/value pairs", item.line, item.column)
            args = [base]
            for facet, value in zip(rest[::2], rest[1::2]):
                args.append(self._name(facet, "facet"))
                args.append(self.literal(value))
            return Expr("DatatypeRestriction", tuple(args))
        return Expr(item.head, self._args(item, DATA_RANGES[item.head]))

    def _one(self, kind: str, item) -> Term:
        if kind == "C":
            return self.class_expr(item)
        if kind == "R":
            return self.object_property(item)
        if kind == "T":
            return self.data_property(item)
        if kind == "D":
            return self.data_range(item)
        if kind == "X":
            return self.property_or_chain(item)
        if kind == "i":
            return self._ref(item, "NamedIndividual")
        if kind == "v":
            return self.literal(item)
        if kind == "n":
            return self.integer(item)
        raise AssertionError(kind)

    def _args(self, node: _Node, spec: str) -> tuple:
        kinds = _signature(spec)
        items = list(node.args)
        out = []
        for k in kinds:
            if k.endswith("+"):
                if not items:
                    break  # checked by the arity message below
                while items:
                    out.append(self._one(k[0], items.pop(0)))
            elif k.endswith("?"):
                if items:
                    out.append(self._one(k[0], items.pop(0)))
            else:
                if not items:
                    raise OwlSyntaxError(f"{node.head} expects {_arity_text(kinds)}, got {len(node.args)}",
                                         node.line, node.column)
                out.append(self._one(k, items.pop(0)))
        minimum = sum(1 for k in kinds if not k.endswith("?"))
        if items or len(out) < minimum:
            raise OwlSyntaxError(f"{node.head} expects {_arity_text(kinds)}, got {len(node.args)}",
                                 node.line, node.column)
        return tuple(out)

    # top level ------------------------------------------------------------

    def annotation(self, node: _Node) -> Annotation:
        if len(node.args) != 2:
            raise OwlSyntaxError("Annotation expects a property and a value", node.line, node.column)
        prop = self._name(node.args[0], "annotation property")
        return Annotation(prop, *self._annotation_value(node.args[1]))

    def _annotation_value(self, item) -> tuple:
        if isinstance(item, Token) and item.kind == "XML":
            return item.value, True
        if isinstance(item, Token) and item.kind in ("STRING", "NAME", "INT"):
            return str(item.value), False
        raise OwlSyntaxError(f"unsupported annotation value {_describe(item)}", *_pos(item))

    def _split(self, node: _Node) -> tuple:
        """Separate ``Annotation(...)`` arguments from the others."""
        notes, rest = [], []
        for arg in node.args:
            if isinstance(arg, _Node) and arg.head == "Annotation":
                notes.append(self.annotation(arg))
            else:
                rest.append(arg)
        return tuple(notes), _Node(node.head, rest, node.line, node.column)

    def item(self, node):
        if not isinstance(node, _Node):
            raise OwlSyntaxError(f"expected an axiom, found {_describe(node)}", *_pos(node))
        head = node.head
        if head == "Annotation":
            self.annotations.append(self.annotation(node))
        elif head == "Declaration":
            notes, body = self._split(node)
            if len(body.args) != 1 or not isinstance(body.args[0], _Node):
                raise OwlSyntaxError("Declaration expects one entity", node.line, node.column)
            self.entity(body.args[0], notes)
        elif head in ENTITY_KINDS:
            self.entity(node, ())
        elif head == "AnnotationAssertion":
            _, body = self._split(node)
            if len(body.args) != 3:
                raise OwlSyntaxError("AnnotationAssertion expects property, subject and value",
                                     node.line, node.column)
            prop = self._name(body.args[0], "annotation property")
            subject = self._name(body.args[1], "subject")
            value, raw = self._annotation_value(body.args[2])
            self.entity_annotations.append(EntityAnnotation(subject, Annotation(prop, value, raw), _loc(node)))
        elif head == "DatatypeDefinition":
            notes, body = self._split(node)
            if len(body.args) != 2:
                raise OwlSyntaxError("DatatypeDefinition expects a name and a data range",
                                     node.line, node.column)
            name = self._name(body.args[0], "datatype")
            self.datatype_definitions.append(DatatypeDefinition(name, self.data_range(body.args[1]), _loc(node)))
            for note in notes:
                self.entity_annotations.append(EntityAnnotation(name, note, _loc(node)))
        elif head == "ClassAssertion":
            notes, body = self._split(node)
            self.class_assertion(body, notes)
        elif head in AXIOMS:
            notes, body = self._split(node)
            self.axioms.append(OwlAxiom(head, self._args(body, AXIOMS[head]), notes, _loc(node)))
        else:
            raise OwlSyntaxError(f"unknown construct {head!r}", node.line, node.column)

    def entity(self, node: _Node, notes: tuple):
        if node.head not in ENTITY_KINDS:
            raise OwlSyntaxError(f"unknown entity kind {node.head!r}", node.line, node.column)
        inner, body = self._split(node)
        if len(body.args) != 1:
            raise OwlSyntaxError(f"{node.head} expects one name", node.line, node.column)
        name = self._name(body.args[0], node.head)
        self.declarations.append(Declaration(ENTITY_KINDS[node.head], name, _loc(node)))
        for note in (*notes, *inner):
            self.entity_annotations.append(EntityAnnotation(name, note, _loc(node)))

    def class_assertion(self, node: _Node, notes: tuple):
        if len(node.args) != 2:
            raise OwlSyntaxError(f"ClassAssertion expects 2 arguments, got {len(node.args)}",
                                 node.line, node.column)
        first, second = node.args
        if isinstance(first, _Node) or isinstance(second, _Node):
            cls, ind = (first, second) if isinstance(first, _Node) else (second, first)
            args = (self.class_expr(cls), self._ref(ind, "NamedIndividual"))
            self.axioms.append(OwlAxiom("ClassAssertion", args, notes, _loc(node)))
            return
        a, b = self._name(first, "class or individual"), self._name(second, "class or individual")
        self.pending[len(self.axioms)] = (first, second)
        self.axioms.append(OwlAxiom("ClassAssertion", (a, b), notes, _loc(node)))

    def resolve_class_assertions(self):
        """Decide which bare name of ``ClassAssertion(x y)`` is the class.

        Order of evidence: declarations, use elsewhere in the document,
        capitalisation (exactly one capitalised name), standard OWL order.
        """
        declared = {}
        for d in self.declarations:
            declared.setdefault(d.name, set()).add(d.kind)
        used = {}
        for ref in self.references:
            used.setdefault(ref.name, set()).add(ref.kind)

        def vote(x, y, table):
            xc, yc = "Class" in table.get(x, ()), "Class" in table.get(y, ())
            xi, yi = "NamedIndividual" in table.get(x, ()), "NamedIndividual" in table.get(y, ())
            if (xc and not yc) or (yi and not xi):
                return 0
            if (yc and not xc) or (xi and not yi):
                return 1
            return None

        for index, (first, second) in self.pending.items():
            x, y = first.value, second.value
            pick = vote(x, y, declared)
            if pick is None:
                pick = vote(x, y, used)
            if pick is None and x[:1].isupper() != y[:1].isupper():
                pick = 0 if x[:1].isupper() else 1
            if pick is None:
                pick = 0
            cls_tok, ind_tok = (first, second) if pick == 0 else (second, first)
            ax = self.axioms[index]
            self.references.append(Reference(cls_tok.value, "Class", _loc(cls_tok)))
            self.references.append(Reference(ind_tok.value, "NamedIndividual", _loc(ind_tok)))
            self.axioms[index] = OwlAxiom("ClassAssertion", (cls_tok.value, ind_tok.value),
                                          ax.annotations, ax.location)


_REFERENCE_KIND_TEXT = {
    "Class": "class", "ObjectProperty": "object property", "DataProperty": "data property",
    "Datatype": "datatype", "NamedIndividual": "individual",
}


def _arity_text(kinds: list) -> str:
    fixed = sum(1 for k in kinds if not k.endswith(("?", "+")))
    optional = sum(1 for k in kinds if k.endswith("?"))
    if any(k.endswith("+") for k in kinds):
        return f"at least {fixed + 1} arguments"
    if optional:
        return f"{fixed} or {fixed + optional} arguments"
    return f"{fixed} argument{'s' if fixed != 1 else ''}"


def _pos(item) -> tuple:
    return (item.line, item.column) if hasattr(item, "line") else (0, 0)


def _describe(item) -> str:
    if isinstance(item, _Node):
        return f"{item.head}(...)"
    if item.kind == "STRING":
        return "a string literal"
    if item.kind == "XML":
        return "an XML block"
    return repr(str(item.value))


def parse_document(text: str) -> OwlDocument:
    """Parse a functional-syntax document; raises :class:`OwlSyntaxError`."""
    top = _read_tree(tokenize(text))
    iri = None
    if len(top) == 1 and isinstance(top[0], _Node) and top[0].head == "Ontology":
        items = list(top[0].args)
        if items and isinstance(items[0], Token) and items[0].kind == "NAME":
            iri = items.pop(0).value
    else:
        items = top
    reader = _Reader()
    for node in items:
        reader.item(node)
    reader.resolve_class_assertions()
    return OwlDocument(
        iri=iri,
        annotations=tuple(reader.annotations),
        declarations=tuple(reader.declarations),
        entity_annotations=tuple(reader.entity_annotations),
        datatype_definitions=tuple(reader.datatype_definitions),
        axioms=tuple(reader.axioms),
        references=tuple(reader.references),
    )


# -- printing --------------------------------------------------------------

def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_term(term) -> str:
    if isinstance(term, str):
        return term
    if isinstance(term, int):
        return str(term)
    if isinstance(term, Literal):
        suffix = f"^^{term.datatype}" if term.datatype else (f"@{term.lang}" if term.lang else "")
        return _quote(term.lexical) + suffix
    if isinstance(term, Expr):
        return f"{term.head}({' '.join(format_term(a) for a in term.args)})"
    raise TypeError(f"not an OWL term: {term!r}")


def format_annotation(a: Annotation) -> str:
    return f"Annotation({a.property} {_quote(a.value)})"


def format_axiom(ax: OwlAxiom) -> str:
    parts = [format_annotation(a) for a in ax.annotations]
    parts += [format_term(t) for t in ax.args]
    return f"{ax.kind}({' '.join(parts)})"


def serialize_document(doc: OwlDocument) -> str:
    """Canonical text for ``doc``; reading it back yields an equal document."""
    lines = [f"Ontology({doc.iri}" if doc.iri else "Ontology("]
    for a in doc.annotations:
        lines.append(f"  {format_annotation(a)}")
    for d in doc.declarations:
        lines.append(f"  Declaration({d.kind}({d.name}))")
    for e in doc.entity_annotations:
        lines.append(f"  AnnotationAssertion({e.annotation.property} {e.subject} {_quote(e.annotation.value)})")
    for d in doc.datatype_definitions:
        lines.append(f"  DatatypeDefinition({d.name} {format_term(d.range)})")
    for ax in doc.axioms:
        lines.append(f"  {format_axiom(ax)}")
    lines.append(")")
    return "\n".join(lines) + "\n"
