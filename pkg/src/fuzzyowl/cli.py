"""Command-line front end.

Exit codes: 0 ok, 1 validation errors, 2 I/O or parse failure,
3 unsupported construct.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import diagnostics as diag
from . import dl
from .evaluator import EvaluationError, Evaluator, maximize_degree, satisfies_kb
from .kb import build_kb
from .logic import DomainError, format_number
from .model import ModelSyntaxError, model_template, parse_grid, parse_model
from .owl import OwlSyntaxError, parse_document
from .translator import PROFILES, TranslationError, capability_report, translate

OK, INVALID, IO_ERROR, UNSUPPORTED = 0, 1, 2, 3


class _Failure(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Failure(IO_ERROR, f"cannot read {path}: {exc.strerror or exc}") from None


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Failure(IO_ERROR, f"cannot write {out}: {exc.strerror or exc}") from None


def _show(diags, fmt: str, stream):
    for d in diags:
        print(d.tsv() if fmt == "tsv" else d.text(), file=stream)


def _exit_for(diags, strict: bool) -> int:
    if not diag.has_errors(diags, strict):
        return OK
    failing = [d for d in diags if d.is_error or (strict and d.severity == diag.WARNING)]
    if all(d.code == "UNSUPPORTED_CONSTRUCT" for d in failing):
        return UNSUPPORTED
    return INVALID


def _load(args, stream):
    """Parse and build, printing diagnostics to ``stream``.

    Only ``validate`` (which prints to stdout) gets the KB back despite errors.
    """
    text = _read(args.input)
    try:
        doc = parse_document(text)
    except OwlSyntaxError as exc:
        raise _Failure(IO_ERROR, f"{args.input}:{exc.location}: {exc}") from None
    kb, diags = build_kb(doc)
    if stream is not None:
        _show(diags, args.format, stream)
    code = _exit_for(diags, args.strict)
    if code != OK and stream is not sys.stdout:
        raise _Failure(code)
    return kb, diags, code


# -- commands -------------------------------------------------------------------

def cmd_validate(args) -> int:
    _, diags, code = _load(args, sys.stdout)
    if args.format == "text" and not diags:
        print(f"{args.input}: ok")
    return code


def cmd_translate(args) -> int:
    kb, _, _ = _load(args, sys.stderr)
    try:
        text = translate(kb, args.target)
    except TranslationError as exc:
        _show(exc.diagnostics, args.format, sys.stderr)
        return UNSUPPORTED
    _write(text, args.out)
    return OK


def _model_path(args, grid_path: str | None, grid_model: str | None) -> str:
    if args.model:
        return args.model
    if grid_model:
        base = Path(grid_path).parent if grid_path and grid_path != "-" else Path(".")
        return str(base / grid_model)
    raise _Failure(IO_ERROR, "no model file given (use --model)")


def _fmt_value(v) -> str:
    return v if isinstance(v, str) else format_number(v)


def cmd_evaluate(args) -> int:
    kb, _, _ = _load(args, sys.stderr)
    model = parse_model(_read(args.model))
    I = model.interpretation
    report = satisfies_kb(I, kb)
    lines = []
    for r in report.results:
        status = "holds" if r.holds else "fails"
        degree = "-" if r.degree is None else format_number(r.degree)
        if args.format == "tsv":
            lines.append(f"axiom\t{status}\t{degree}\t{dl.render(r.axiom)}")
        else:
            lines.append(f"{status:5}  {degree:>8}  {dl.render(r.axiom)}")
    for q in model.queries:
        ev = Evaluator(I, kb, trace=args.trace)
        value = ev.check(q).degree
        if args.format == "tsv":
            lines.append(f"query\t{format_number(value)}\t{dl.render_body(q)}")
        else:
            lines.append(f"query  {format_number(value):>8}  {dl.render_body(q)}")
        if args.trace and ev.trace_root is not None:
            lines.extend("    " + t for t in ev.trace_root.lines())
    verdict = "satisfied" if report.satisfied else "not satisfied"
    lines.append(f"model\t{verdict}" if args.format == "tsv" else f"model {verdict}")
    _write("\n".join(lines) + "\n", args.out)
    return OK


def cmd_maximize(args) -> int:
    kb, _, _ = _load(args, sys.stderr)
    if not args.grid:
        raise _Failure(IO_ERROR, "maximize needs --grid")
    grid = parse_grid(_read(args.grid))
    template_text = _read(_model_path(args, args.grid, grid.model))
    concept = grid.concept()
    try:
        best = maximize_degree(model_template(template_text), grid.params, concept, kb,
                               element=grid.element)
    except (EvaluationError, DomainError, ModelSyntaxError):
        raise
    except ValueError as exc:  # empty grid, or no grid point is a model
        raise _Failure(IO_ERROR, str(exc)) from None
    if args.format == "tsv":
        lines = [f"param\t{k}\t{_fmt_value(v)}" for k, v in best.params.items()]
        lines += [f"element\t{best.element}", f"degree\t{format_number(best.degree)}"]
    else:
        params = " ".join(f"{k}={_fmt_value(v)}" for k, v in best.params.items())
        lines = [f"best {params}", f"at {best.element}",
                 f"degree {format_number(best.degree)} for {dl.render(concept)}"]
    _write("\n".join(lines) + "\n", args.out)
    return OK


def cmd_info(args) -> int:
    kb, _, _ = _load(args, sys.stderr)
    target = args.target or "generic"
    report = capability_report(kb, target)
    if args.format == "tsv":
        lines = [f"logic\t{kb.logic.value}"]
        lines += [f"{box}\t{len(getattr(kb, box))}" for box in ("abox", "tbox", "rbox")]
        lines += [f"construct\t{e.tag}\t{e.count}\t{'yes' if e.supported else e.support.value}"
                  for e in report]
    else:
        lines = [f"logic {kb.logic.value}",
                 f"definitions: {len(kb.modifiers)} modifiers, {len(kb.datatypes)} datatypes, "
                 f"{len(kb.concepts)} concepts, {len(kb.roles)} roles",
                 f"axioms: {len(kb.abox)} abox, {len(kb.tbox)} tbox, {len(kb.rbox)} rbox",
                 f"constructs ({target}):"]
        lines += [f"  {e.tag:4} {e.count:4}  {'yes' if e.supported else e.support.value}" for e in report]
    _write("\n".join(lines) + "\n", args.out)
    return OK


COMMANDS = {"validate": cmd_validate, "translate": cmd_translate, "evaluate": cmd_evaluate,
            "maximize": cmd_maximize, "info": cmd_info}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzyowl",
                                     description="Validate, translate and evaluate fuzzy OWL 2 ontologies.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="ontology in functional syntax ('-' for stdin)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--strict", action="store_true", help="treat warnings as errors")
    common.add_argument("--format", choices=("text", "tsv"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="report diagnostics")
    p = sub.add_parser("translate", parents=[common], help="emit a reasoner dialect")
    p.add_argument("--target", choices=sorted(PROFILES), default="generic")
    p = sub.add_parser("evaluate", parents=[common], help="check the KB against a finite model")
    p.add_argument("--model", required=True)
    p.add_argument("--trace", action="store_true", help="print evaluation traces for queries")
    p = sub.add_parser("maximize", parents=[common], help="grid search for the best degree")
    p.add_argument("--grid", required=True)
    p.add_argument("--model", help="model template (default: the grid file's 'model' line)")
    p = sub.add_parser("info", parents=[common], help="construct counts and logic")
    p.add_argument("--target", choices=sorted(PROFILES))
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return IO_ERROR if exc.code else OK
    try:
        return COMMANDS[args.command](args)
    except _Failure as exc:
        if str(exc):
            print(f"fuzzyowl: {exc}", file=sys.stderr)
        return exc.code
    except (ModelSyntaxError, EvaluationError, DomainError) as exc:
        print(f"fuzzyowl: {exc}", file=sys.stderr)
        return IO_ERROR


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
