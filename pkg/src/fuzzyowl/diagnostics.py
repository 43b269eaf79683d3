"""Diagnostic records shared by the validator, KB builder and translator."""

from __future__ import annotations

from dataclasses import dataclass, field

ERROR = "error"
WARNING = "warning"
INFO = "info"

# code -> one-line meaning; docs/diagnostics.md lists the same table.
CODES = {
    # annotation payloads (local checks)
    "ANNOTATION_SYNTAX": "fuzzyLabel payload is not a valid fuzzyOwl2 element",
    "MOD_RANGE": "modifier parameters a, b, c must lie in [0, 1]",
    "MOD_ORDER": "triangular modifier breakpoints must satisfy a <= b <= c",
    "MOD_B0_IFF_A1": "modifier clause 'b = 0 iff a = 1' does not hold",
    "MOD_B1_IFF_C1": "modifier clause 'b = 1 iff c = 1' does not hold",
    "DT_ORDER": "datatype breakpoints must satisfy k1 <= a <= b <= c <= d <= k2",
    "WEIGHT_RANGE": "weighted or nominal value must lie in (0, 1]",
    "WSUM_ARITY": "weighted sum needs at least 2 weighted concepts",
    "WSUM_TOTAL": "weighted sum weights must add up to at most 1",
    "DEGREE_RANGE": "axiom degree must lie in (0, 1]",
    # cross-reference checks
    "REF_MODIFIER": "modifier is not defined as a fuzzy modifier",
    "REF_DATATYPE": "base is not defined as a fuzzy datatype",
    "SELF_REFERENCE": "element is defined in terms of itself",
    "DEFINITION_CYCLE": "fuzzy definitions refer to each other cyclically",
    "DUPLICATE_ANNOTATION": "more than one fuzzyLabel annotation on one element",
    "NON_GRADABLE_AXIOM": "degree annotation on an axiom kind that takes no degree",
    "TYPE_MISMATCH": "fuzzyType does not fit the annotated element",
    "NON_SIMPLE_ROLE": "non-simple role used where a simple role is required",
    "UNDECLARED_NAME": "name is used without a declaration",
    "UNSUPPORTED_CONSTRUCT": "construct is outside the supported subset",
    "UNSUPPORTED_DOWNSTREAM": "construct is not supported by any target reasoner",
    # translation
    "TARGET_UNSUPPORTED": "construct is not supported by the target dialect",
    "TARGET_PARTIAL": "construct is only partially supported by the target dialect",
}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    message: str
    location: str = "-"
    values: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def tsv(self) -> str:
        message = self.message.replace("\t", " ").replace("\n", " ")
        return f"{self.code}\t{self.severity}\t{self.location}\t{message}"

    def text(self) -> str:
        return f"{self.location}: {self.severity}: {self.message} [{self.code}]"

    def relocated(self, location: str) -> "Diagnostic":
        return Diagnostic(self.code, self.severity, self.message, location, self.values)


def error(code, message, location="-", values=()) -> Diagnostic:
    return Diagnostic(code, ERROR, message, location, tuple(values))


def warning(code, message, location="-", values=()) -> Diagnostic:
    return Diagnostic(code, WARNING, message, location, tuple(values))


def info(code, message, location="-", values=()) -> Diagnostic:
    return Diagnostic(code, INFO, message, location, tuple(values))


def has_errors(diagnostics, strict: bool = False) -> bool:
    failing = {ERROR, WARNING} if strict else {ERROR}
    return any(d.severity in failing for d in diagnostics)
