"""Grammar for submeasures and tree specifications.

Submeasures: `(card)`, `(const n)`, `(join m m)`, `(meet m m)`, `(mazur t1 t2 ...)`,
`(imeet N m1 m2 ...)`, `(dom (table k1 v1 ...) (affine a b))`, or a label.

Trees: `(subsets S)`, `(cylinder D "bits" ...)`, `(domenum (table ...) (affine a b))`,
`(stab name (fin ...))`, `(pi1hat name (fin ...) y S)`, `(noconv name (fin ...) (args ...))`.
"""

from __future__ import annotations

from typing import Mapping

from core.errors import ParseError
from core.reader import (
    Symbol,
    arity_error,
    expect_int,
    expect_list,
    head,
    position_of,
    read_one,
    write,
)
from core.syntax import parse_bits, parse_finset, parse_set, resolve_label
from names.syntax import parse_name, parse_table
from submeasure.expressions import Card, Const, Dom, IMeet, Join, Mazur, Meet, Submeasure
from submeasure.trees import Cylinder, DomEnum, Growth, NoConv, Pi1Hat, Stab, Subsets, TreeSpec


def parse_growth(table_form, affine_form) -> Growth:
    if head(table_form) != "table" or head(affine_form) != "affine":
        raise ParseError("expected (table ...) (affine a b)", position_of(table_form))
    return Growth(*parse_table(table_form, affine_form))


def parse_submeasure(form, env: Mapping[str, object] | None = None) -> Submeasure:
    if isinstance(form, str) and not isinstance(form, Symbol):
        form = read_one(form)
    if isinstance(form, Symbol):
        return resolve_label(form, env, Submeasure)

    op = head(form)
    args = form[1:] if isinstance(form, list) else []
    if op == "card":
        return Card()
    if op == "const":
        if len(args) != 1:
            raise arity_error(form, 1)
        return Const(expect_int(args[0]))
    if op in ("join", "meet"):
        if len(args) != 2:
            raise arity_error(form, 2)
        cls = Join if op == "join" else Meet
        return cls(parse_submeasure(args[0], env), parse_submeasure(args[1], env))
    if op == "mazur":
        return Mazur(tuple(parse_tree(t, env) for t in args))
    if op == "imeet":
        if len(args) < 2:
            raise arity_error(form, "a depth and at least one submeasure")
        depth = expect_int(args[0])
        if depth < 1:
            raise ParseError("imeet depth must be positive", position_of(form))
        return IMeet(tuple(parse_submeasure(m, env) for m in args[1:]), depth)
    if op == "dom":
        if len(args) != 2:
            raise arity_error(form, 2)
        return Dom(parse_growth(args[0], args[1]))
    raise ParseError(f"unknown submeasure {write(form)}", position_of(form))


def parse_tree(form, env: Mapping[str, object] | None = None) -> TreeSpec:
    if isinstance(form, Symbol):
        return resolve_label(form, env, TreeSpec)
    op = head(form)
    args = form[1:] if isinstance(form, list) else []
    if op == "subsets":
        if len(args) != 1:
            raise arity_error(form, 1)
        return Subsets(parse_set(args[0], env))
    if op == "cylinder":
        if not args:
            raise arity_error(form, "a depth and strings")
        depth = expect_int(args[0])
        strings = [parse_bits(s) for s in args[1:]]
        try:
            return Cylinder(depth, frozenset(s.bits for s in strings))
        except ValueError as e:
            raise ParseError(str(e), position_of(form)) from e
    if op == "domenum":
        if len(args) != 2:
            raise arity_error(form, 2)
        return DomEnum(parse_growth(args[0], args[1]))
    if op == "stab":
        if len(args) != 2:
            raise arity_error(form, 2)
        return Stab(_unary(parse_name(args[0], env), args[0]), parse_finset(args[1], env))
    if op == "pi1hat":
        if len(args) != 4:
            raise arity_error(form, 4)
        matrix = parse_name(args[0], env)
        if matrix.arity < 1:
            raise ParseError("pi1hat matrix takes (y, u ...)", position_of(args[0]))
        return Pi1Hat(matrix, parse_finset(args[1], env), expect_int(args[2]), parse_set(args[3], env))
    if op == "noconv":
        if len(args) != 3:
            raise arity_error(form, 3)
        functional = parse_name(args[0], env)
        values = tuple(expect_int(v) for v in expect_list(args[2], "argument list"))
        if len(values) != functional.arity:
            raise ParseError(
                f"{functional.describe()} has arity {functional.arity}, got {len(values)} arguments",
                position_of(args[2]),
            )
        return NoConv(functional, parse_finset(args[1], env), values)
    raise ParseError(f"unknown tree {write(form)}", position_of(form))


def _unary(name, form):
    if name.arity != 1:
        raise ParseError(f"{name.describe()} must be unary", position_of(form))
    return name
