"""Fuzzy logic operators, membership functions and modifiers.

All functions accept either :class:`fractions.Fraction` or ``float`` degrees
and preserve exactness when every input is rational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from typing import Optional, Union

Number = Union[Fraction, float, int]

ONE = Fraction(1)
ZERO = Fraction(0)


class DomainError(ValueError):
    """A value lies outside the reference interval of a membership function."""


class Family(str, enum.Enum):
    ZADEH = "zadeh"
    LUKASIEWICZ = "lukasiewicz"
    GODEL = "godel"
    PRODUCT = "product"

    @classmethod
    def parse(cls, name: str) -> "Family":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown fuzzy logic {name!r}") from None

    def tnorm(self, x: Number, y: Number) -> Number:
        return tnorm(self, x, y)

    def tconorm(self, x: Number, y: Number) -> Number:
        return tconorm(self, x, y)

    def negation(self, x: Number) -> Number:
        return negation(self, x)

    def implication(self, x: Number, y: Number) -> Number:
        return implication(self, x, y)


def to_number(value) -> Number:
    """Coerce ints, decimal strings and Fractions to Fraction; keep floats."""
    if isinstance(value, float):
        return value
    if isinstance(value, (Rational, str)):
        return Fraction(value)
    if isinstance(value, Real):
        return float(value)
    raise TypeError(f"not a number: {value!r}")


def degree(value) -> Number:
    """Validate a truth degree in [0, 1]."""
    v = to_number(value)
    if not 0 <= v <= 1:
        raise ValueError(f"degree {value} outside [0, 1]")
    return v


def tnorm(family: Family, x: Number, y: Number) -> Number:
    if family is Family.LUKASIEWICZ:
        return max(x + y - 1, 0 * x)
    if family is Family.PRODUCT:
        return x * y
    return min(x, y)


def tconorm(family: Family, x: Number, y: Number) -> Number:
    if family is Family.LUKASIEWICZ:
        return min(x + y, 1 + 0 * x)
    if family is Family.PRODUCT:
        return x + y - x * y
    return max(x, y)


def negation(family: Family, x: Number) -> Number:
    if family in (Family.ZADEH, Family.LUKASIEWICZ):
        return 1 - x
    # Goedel and Product share the same (non-involutive) step negation.
    return 1 + 0 * x if x == 0 else 0 * x


def implication(family: Family, x: Number, y: Number) -> Number:
    if family is Family.ZADEH:
        return max(1 - x, y)
    if family is Family.LUKASIEWICZ:
        return min(1 - x + y, 1 + 0 * x)
    if x <= y:
        return 1 + 0 * x
    if family is Family.GODEL:
        return y
    return y / x


class ShapeKind(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    TRIANGULAR = "triangular"
    TRAPEZOIDAL = "trapezoidal"


# breakpoint count used by each shape
_ARITY = {
    ShapeKind.LEFT: 2,
    ShapeKind.RIGHT: 2,
    ShapeKind.TRIANGULAR: 3,
    ShapeKind.TRAPEZOIDAL: 4,
}


@dataclass(frozen=True)
class MembershipShape:
    """A piecewise-linear fuzzy predicate over the interval ``[k1, k2]``."""

    kind: ShapeKind
    k1: Number
    k2: Number
    a: Number
    b: Number
    c: Optional[Number] = None
    d: Optional[Number] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ShapeKind(self.kind))
        chain = [self.k1, *self.breakpoints, self.k2]
        if any(p is None for p in chain):
            raise ValueError(f"{self.kind.value} shape needs {_ARITY[self.kind]} breakpoints")
        extra = (self.c, self.d)[_ARITY[self.kind] - 2:]
        if any(p is not None for p in extra):
            raise ValueError(f"{self.kind.value} shape takes {_ARITY[self.kind]} breakpoints")
        if any(p > q for p, q in zip(chain, chain[1:])):
            raise ValueError(f"breakpoints not ordered: {self}")

    @classmethod
    def left(cls, k1, k2, a, b) -> "MembershipShape":
        return cls(ShapeKind.LEFT, *map(to_number, (k1, k2, a, b)))

    @classmethod
    def right(cls, k1, k2, a, b) -> "MembershipShape":
        return cls(ShapeKind.RIGHT, *map(to_number, (k1, k2, a, b)))

    @classmethod
    def triangular(cls, k1, k2, a, b, c) -> "MembershipShape":
        return cls(ShapeKind.TRIANGULAR, *map(to_number, (k1, k2, a, b, c)))

    @classmethod
    def trapezoidal(cls, k1, k2, a, b, c, d) -> "MembershipShape":
        return cls(ShapeKind.TRAPEZOIDAL, *map(to_number, (k1, k2, a, b, c, d)))

    @property
    def breakpoints(self) -> tuple:
        return (self.a, self.b, self.c, self.d)[: _ARITY[self.kind]]

    def __call__(self, x: Number) -> Number:
        return membership(self, x)

    def __str__(self) -> str:
        args = ", ".join(format_number(v) for v in (self.k1, self.k2, *self.breakpoints))
        return f"{self.kind.value}({args})"


def _ramp_up(x, lo, hi):
    return (x - lo) / (hi - lo)


def _ramp_down(x, lo, hi):
    return (hi - x) / (hi - lo)


def membership(shape: MembershipShape, x: Number) -> Number:
    """Evaluate ``shape`` at ``x``.

    Zero-width ramps (two equal adjacent breakpoints) behave as crisp steps
    whose boundary point takes degree 1.
    """
    if not shape.k1 <= x <= shape.k2:
        raise DomainError(f"{shape} is undefined at {format_number(x)}")
    one, zero = 1 + 0 * x, 0 * x
    kind, a, b = shape.kind, shape.a, shape.b
    if kind is ShapeKind.LEFT:
        if x <= a:
            return one
        if x >= b:
            return zero
        return _ramp_down(x, a, b)
    if kind is ShapeKind.RIGHT:
        if x >= b:
            return one
        if x <= a:
            return zero
        return _ramp_up(x, a, b)
    if kind is ShapeKind.TRIANGULAR:
        c = shape.c
        if x == b:
            return one
        if x <= a or x >= c:
            return zero
        return _ramp_up(x, a, b) if x < b else _ramp_down(x, b, c)
    c, d = shape.c, shape.d
    if b <= x <= c:
        return one
    if x <= a or x >= d:
        return zero
    return _ramp_up(x, a, b) if x < b else _ramp_down(x, c, d)


class ModifierKind(str, enum.Enum):
    LINEAR = "linear"
    TRIANGULAR = "triangular"


@dataclass(frozen=True)
class ModifierDef:
    """A fuzzy hedge ``[0, 1] -> [0, 1]``.

    ``linear(c)`` is the two-segment line through (0, 0), (a, b) and (1, 1)
    with ``a = c/(c+1)`` and ``b = 1/(c+1)``; ``triangular(a, b, c)`` is the
    triangular membership function over [0, 1].
    """

    kind: ModifierKind
    c: Number
    a: Optional[Number] = None
    b: Optional[Number] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ModifierKind(self.kind))
        if self.kind is ModifierKind.LINEAR:
            if self.a is not None or self.b is not None:
                raise ValueError("linear modifiers take only c")
            if self.c < 0:
                raise ValueError(f"linear modifier needs c >= 0, got {self.c}")
        else:
            if self.a is None or self.b is None:
                raise ValueError("triangular modifiers need a, b and c")
            if not 0 <= self.a <= self.b <= self.c <= 1:
                raise ValueError(f"modifier breakpoints not ordered in [0, 1]: {self}")

    @classmethod
    def linear(cls, c) -> "ModifierDef":
        return cls(ModifierKind.LINEAR, to_number(c))

    @classmethod
    def triangular(cls, a, b, c) -> "ModifierDef":
        return cls(ModifierKind.TRIANGULAR, to_number(c), to_number(a), to_number(b))

    @property
    def knee(self) -> tuple:
        """The (a, b) breakpoint of a linear modifier."""
        c = self.c
        return c / (c + 1), 1 / (c + 1)

    def __call__(self, x: Number) -> Number:
        return apply_modifier(self, x)

    def __str__(self) -> str:
        if self.kind is ModifierKind.LINEAR:
            return f"linear({format_number(self.c)})"
        return f"triangular({format_number(self.a)}, {format_number(self.b)}, {format_number(self.c)})"


def apply_modifier(mod: ModifierDef, x: Number) -> Number:
    if mod.kind is ModifierKind.TRIANGULAR:
        return membership(MembershipShape(ShapeKind.TRIANGULAR, 0, 1, mod.a, mod.b, mod.c), x)
    a, b = mod.knee
    if isinstance(x, float):
        a, b = float(a), float(b)
    if x <= a:
        return x * b / a if a else 0 * x
    return b + (x - a) * (1 - b) / (1 - a)


def format_number(value: Number) -> str:
    """Shortest plain decimal for ``value``: no exponent, no trailing zeros."""
    if isinstance(value, float):
        if value.is_integer():
            return str(int(value))
        text = repr(value)
        if "e" in text or "E" in text:
            text = f"{value:.17f}".rstrip("0").rstrip(".")
        return text
    q = Fraction(value)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return format_number(float(q))
    places = max(twos, fives)
    if places == 0:
        return str(q.numerator)
    scaled = abs(q.numerator) * 10**places // q.denominator
    sign = "-" if q < 0 else ""
    digits = str(scaled).rjust(places + 1, "0")
    whole, frac = digits[:-places], digits[-places:].rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"
