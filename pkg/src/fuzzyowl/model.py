"""Line-oriented model and grid files.

Model file::

    # comment
    domain a b c
    values 20 22500
    individual paul=a
    concept Tall(a)=0.5
    role isFriendOf(a,b)=0.75
    crole hasAge(a,20)=1
    query Tall(paul)

Grid file (for ``maximize``)::

    param price=22000:26000:500
    param color=black1,gray1
    target Buy Sell
    at car
    model matchmaking.model   # template path, relative to the grid file

A model file used as a template may contain ``$name`` placeholders that are
filled from the grid point before parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from string import Template

from . import dl
from .annotations import parse_number
from .evaluator import FiniteInterpretation
from .logic import format_number


class ModelSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


_ENTRY = re.compile(r"^(\S+?)\(\s*([^,()\s]+)\s*(?:,\s*([^,()\s]+)\s*)?\)\s*=\s*(\S+)$")
_QUERY = re.compile(r"^(\S+?)\(\s*([^,()\s]+)\s*(?:,\s*([^,()\s]+)\s*)?\)$")


def _number(text: str, line: int, what: str = "number") -> Fraction:
    try:
        return parse_number(text, what)
    except ValueError as exc:
        raise ModelSyntaxError(str(exc), line) from None


def _is_number(text: str) -> bool:
    return re.fullmatch(r"[+-]?(\d+(\.\d*)?|\.\d+)", text) is not None


@dataclass
class Model:
    interpretation: FiniteInterpretation
    queries: tuple = ()


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body


def parse_model(text: str, params: dict | None = None) -> Model:
    if params is not None:
        text = "\n".join(raw.split("#", 1)[0] for raw in text.splitlines())
        try:
            text = Template(text).substitute({k: _param_text(v) for k, v in params.items()})
        except (KeyError, ValueError) as exc:
            raise ModelSyntaxError(f"template placeholder {exc} has no value") from None
    domain, values, individuals = [], [], {}
    concepts, roles, croles, queries = {}, {}, {}, []
    pending_queries = []
    for line, body in _lines(text):
        keyword, _, rest = body.partition(" ")
        rest = rest.strip()
        if keyword == "domain":
            domain.extend(rest.split())
        elif keyword == "values":
            values.extend(_number(v, line, "value") for v in rest.split())
        elif keyword == "individual":
            for binding in rest.split():
                name, eq, target = binding.partition("=")
                if not eq or not name or not target:
                    raise ModelSyntaxError(f"expected name=element, got {binding!r}", line)
                if name in individuals:
                    raise ModelSyntaxError(f"individual {name} mapped twice", line)
                individuals[name] = target
        elif keyword in ("concept", "role", "crole"):
            m = _ENTRY.match(rest.replace(" ", ""))
            if not m:
                raise ModelSyntaxError(f"malformed {keyword} entry {rest!r}", line)
            name, first, second, degree = m.groups()
            deg = _number(degree, line, "degree")
            if not 0 <= deg <= 1:
                raise ModelSyntaxError(f"degree {degree} outside [0, 1]", line)
            if keyword == "concept":
                if second is not None:
                    raise ModelSyntaxError("concept entries take one element", line)
                key = (name, first)
                table = concepts
            else:
                if second is None:
                    raise ModelSyntaxError(f"{keyword} entries take two arguments", line)
                if keyword == "role":
                    key, table = (name, first, second), roles
                else:
                    key, table = (name, first, _number(second, line, "value")), croles
            if key in table:
                raise ModelSyntaxError(f"duplicate entry for {keyword} {name}", line)
            table[key] = deg
        elif keyword == "query":
            m = _QUERY.match(rest.replace(" ", ""))
            if not m:
                raise ModelSyntaxError(f"malformed query {rest!r}", line)
            pending_queries.append((line, m.groups()))
        else:
            raise ModelSyntaxError(f"unknown keyword {keyword!r}", line)

    def resolve(name):
        target = individuals.get(name, name)
        if target not in domain:
            raise ModelSyntaxError(f"{name} is not a domain element or mapped individual")
        return target

    # table entries may name individuals instead of elements
    concepts = {(c, resolve(x)): d for (c, x), d in concepts.items()}
    roles = {(r, resolve(x), resolve(y)): d for (r, x, y), d in roles.items()}
    croles = {(t, resolve(x), v): d for (t, x, v), d in croles.items()}
    for line, (name, first, second) in pending_queries:
        if second is None:
            queries.append(dl.ConceptAssertion(first, dl.Atomic(name)))
        elif _is_number(second):
            queries.append(dl.DataAssertion(dl.DataRoleName(name), first, _number(second, line)))
        else:
            queries.append(dl.RoleAssertion(dl.RoleName(name), first, second))
    try:
        interp = FiniteInterpretation(domain=tuple(domain), values=tuple(values), individuals=individuals,
                                      concepts=concepts, roles=roles, croles=croles)
    except ValueError as exc:
        raise ModelSyntaxError(str(exc)) from None
    return Model(interp, tuple(queries))


def _param_text(value) -> str:
    return value if isinstance(value, str) else format_number(value)


def model_template(text: str):
    """Callable mapping a grid point to the interpretation it instantiates."""
    def instantiate(params: dict) -> FiniteInterpretation:
        return parse_model(text, params).interpretation
    return instantiate


@dataclass
class Grid:
    params: dict = field(default_factory=dict)
    target: tuple = ()
    element: str | None = None
    model: str | None = None

    def concept(self) -> dl.Node:
        if not self.target:
            raise ModelSyntaxError("grid file names no target concept")
        atoms = tuple(dl.Atomic(n) for n in self.target)
        return atoms[0] if len(atoms) == 1 else dl.And(atoms)


def _range(spec: str, line: int) -> list:
    parts = spec.split(":")
    if len(parts) == 3:
        lo, hi, step = (_number(p, line) for p in parts)
        if step <= 0:
            raise ModelSyntaxError("range step must be positive", line)
        out, v = [], lo
        while v <= hi:
            out.append(v)
            v += step
        return out
    items = [p for p in spec.split(",") if p]
    return [_number(p, line) if _is_number(p) else p for p in items]


def parse_grid(text: str) -> Grid:
    grid = Grid()
    for line, body in _lines(text):
        keyword, _, rest = body.partition(" ")
        rest = rest.strip()
        if keyword == "param":
            name, eq, spec = rest.replace(" ", "").partition("=")
            if not eq or not name:
                raise ModelSyntaxError(f"expected param name=range, got {rest!r}", line)
            if name in grid.params:
                raise ModelSyntaxError(f"parameter {name} given twice", line)
            grid.params[name] = _range(spec, line)
        elif keyword == "target":
            grid.target = tuple(rest.split())
        elif keyword == "at":
            grid.element = rest
        elif keyword == "model":
            grid.model = rest
        else:
            raise ModelSyntaxError(f"unknown keyword {keyword!r}", line)
    return grid
