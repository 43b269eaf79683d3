"""OWL 2 functional-syntax subset: reading, printing and mapping to DL."""

from .mapping import UnsupportedConstruct, concept, datatype, role, to_dl
from .syntax import (Annotation, Declaration, DatatypeDefinition, EntityAnnotation, Expr,
                     Literal, OwlAxiom, OwlDocument, OwlSyntaxError, format_axiom, format_term,
                     parse_document, serialize_document)

__all__ = [
    "Annotation", "Declaration", "DatatypeDefinition", "EntityAnnotation", "Expr", "Literal",
    "OwlAxiom", "OwlDocument", "OwlSyntaxError", "UnsupportedConstruct", "concept", "datatype",
    "format_axiom", "format_term", "parse_document", "role", "serialize_document", "to_dl",
]
