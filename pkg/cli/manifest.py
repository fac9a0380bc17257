"""
Run manifests.

A manifest is a file of S-expressions:

    (command fusion)                      optional; must match the subcommand
    (set LABEL set-form)
    (measure LABEL submeasure-form)
    (name LABEL name-form)
    (formula LABEL formula-form)
    (budgets (depth 8) (horizon 64) ...)  any field of forcing.budgets.Budgets
    (out "events.jsonl")

Labels are resolved in file order, so a definition can only use labels defined
above it and the label graph is acyclic by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from core.errors import ParseError
from core.reader import Symbol, arity_error, expect_int, expect_string, head, position_of, read, read_one, write
from core.syntax import parse_set
from formula.ast import Formula
from formula.syntax import parse_formula
from forcing.budgets import Budgets
from forcing.requirements import AvoidDominating, DecideSet, DenseSpec, MeasureAtLeast, Pi2
from names.syntax import parse_name
from submeasure.syntax import parse_growth, parse_submeasure

_PARSERS = {
    "set": parse_set,
    "measure": parse_submeasure,
    "name": parse_name,
    "formula": parse_formula,
}

BUDGET_FIELDS = {f.name for f in fields(Budgets)}


@dataclass
class RunManifest:
    command: str | None = None
    env: dict[str, object] = field(default_factory=dict)
    budgets: dict[str, int] = field(default_factory=dict)
    out: str | None = None

    def apply(self, budgets: Budgets) -> Budgets:
        return replace(budgets, **self.budgets)


def parse_manifest(text: str) -> RunManifest:
    manifest = RunManifest()
    for form in read(text):
        op = head(form)
        args = form[1:] if isinstance(form, list) else []
        if op == "command":
            if len(args) != 1:
                raise arity_error(form, 1)
            manifest.command = str(args[0])
        elif op in _PARSERS:
            if len(args) != 2 or not isinstance(args[0], Symbol):
                raise ParseError(f"'{op}' expects a label and a definition", position_of(form))
            label = str(args[0])
            if label in manifest.env:
                raise ParseError(f"label '{label}' defined twice", position_of(form))
            manifest.env[label] = _PARSERS[op](args[1], manifest.env)
        elif op == "budgets":
            for entry in args:
                key = head(entry)
                if key not in BUDGET_FIELDS or len(entry) != 2:
                    raise ParseError(f"unknown budget {write(entry)}", position_of(entry))
                manifest.budgets[key] = expect_int(entry[1])
        elif op == "out":
            if len(args) != 1:
                raise arity_error(form, 1)
            manifest.out = expect_string(args[0], "quoted path")
        else:
            raise ParseError(f"unknown manifest entry {write(form)}", position_of(form))
    return manifest


def load_manifest(path: str | Path | None) -> RunManifest:
    if path is None:
        return RunManifest()
    return parse_manifest(Path(path).read_text())


def lookup_formula(text: str, env: dict[str, object]) -> Formula:
    """A formula given inline, or the label of one defined in the manifest."""
    value = env.get(text.strip())
    if isinstance(value, Formula):
        return value
    return parse_formula(text, env)


def parse_requirement(text, env: dict[str, object]) -> DenseSpec:
    """`(measure)`, `(measure s)`, `(decide SET)`, `(pi2 FAMILY)`, `(dominate)` or
    `(dominate (table ...) (affine a b))`."""
    form = read_one(text) if isinstance(text, str) else text
    op = head(form)
    args = form[1:] if isinstance(form, list) else []
    if op == "measure":
        if len(args) > 1:
            raise arity_error(form, "at most 1")
        return MeasureAtLeast(expect_int(args[0]) if args else None)
    if op == "decide":
        if len(args) != 1:
            raise arity_error(form, 1)
        return DecideSet(parse_set(args[0], env))
    if op == "pi2":
        if len(args) != 1:
            raise arity_error(form, 1)
        return Pi2(_formula_arg(args[0], env))
    if op == "dominate":
        if not args:
            return AvoidDominating()
        if len(args) != 2:
            raise arity_error(form, "0 or 2")
        return AvoidDominating(parse_growth(args[0], args[1]))
    raise ParseError(f"unknown requirement {write(form)}", position_of(form))


def _formula_arg(form, env: dict[str, object]) -> Formula:
    if isinstance(form, Symbol) and isinstance(env.get(str(form)), Formula):
        return env[str(form)]
    return parse_formula(form, env)
