"""Fuzzy OWL 2 toolkit: annotated ontologies to fuzzy DL knowledge bases."""

from .annotations import canonical, parse_annotation, serialize_annotation, validate_local
from .kb import DEFAULT_LOGIC, FuzzyKB, build_kb, definition_cycle_check, simple_role_check
from .logic import (DomainError, Family, MembershipShape, ModifierDef, apply_modifier,
                    implication, membership, negation, tconorm, tnorm)
from .owl import parse_document, to_dl

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LOGIC", "DomainError", "Family", "FuzzyKB", "MembershipShape", "ModifierDef",
    "apply_modifier", "build_kb", "canonical", "definition_cycle_check", "implication",
    "membership", "negation", "parse_annotation", "parse_document", "serialize_annotation",
    "simple_role_check", "tconorm", "tnorm", "to_dl", "validate_local",
]
