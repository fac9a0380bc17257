"""Grammar for finite and periodic sets: `(fin 1 2 3)`, `(nat)`, `(prog a d)`,
`(periodic "0110" "10")`, `(empty)`, `(union S S)`, `(inter S S)`, `(diff S S)`.

A bare symbol is looked up in the label environment supplied by the caller.
"""

from __future__ import annotations

from typing import Mapping

from core import periodic as ps
from core.errors import ParseError, UnknownLabel
from core.finsets import BitString, FinSet
from core.periodic import PeriodicSet
from core.reader import (
    Symbol,
    arity_error,
    expect_int,
    expect_string,
    head,
    position_of,
    read_one,
    write,
)


def resolve_label(form, env: Mapping[str, object] | None, kind: type):
    if env is None or str(form) not in env:
        raise UnknownLabel(str(form))
    value = env[str(form)]
    if not isinstance(value, kind):
        kinds = kind if isinstance(kind, tuple) else (kind,)
        wanted = " or ".join(k.__name__ for k in kinds)
        raise ParseError(f"label '{form}' is not a {wanted}", position_of(form))
    return value


def parse_finset(form, env: Mapping[str, object] | None = None) -> FinSet:
    if isinstance(form, str) and not isinstance(form, Symbol):
        form = read_one(form)
    if isinstance(form, Symbol):
        return resolve_label(form, env, FinSet)
    if head(form) != "fin":
        raise ParseError(f"expected (fin ...), got {write(form)}", position_of(form))
    return FinSet.of(expect_int(e) for e in form[1:])


def parse_bits(form) -> BitString:
    bits = expect_string(form)
    try:
        return BitString(bits)
    except ValueError as e:
        raise ParseError(str(e), position_of(form)) from e


def parse_set(form, env: Mapping[str, object] | None = None) -> PeriodicSet:
    if isinstance(form, str) and not isinstance(form, Symbol):
        form = read_one(form)
    if isinstance(form, Symbol):
        value = resolve_label(form, env, (PeriodicSet, FinSet))
        return ps.fin(value) if isinstance(value, FinSet) else value

    op = head(form)
    args = form[1:] if isinstance(form, list) else []
    if op == "nat":
        return ps.nat()
    if op == "empty":
        return ps.empty()
    if op == "fin":
        return ps.fin(parse_finset(form))
    if op == "prog":
        if len(args) != 2:
            raise arity_error(form, 2)
        a, d = expect_int(args[0]), expect_int(args[1])
        if d == 0:
            raise ParseError("progression step must be positive", position_of(form))
        return ps.prog(a, d)
    if op == "periodic":
        if len(args) != 2:
            raise arity_error(form, 2)
        prefix, period = parse_bits(args[0]), parse_bits(args[1])
        if not len(period):
            raise ParseError("period must be nonempty", position_of(form))
        return ps.periodic(prefix.bits, period.bits)
    if op in ("union", "inter", "diff"):
        if len(args) < 2:
            raise arity_error(form, "at least 2")
        result = parse_set(args[0], env)
        for arg in args[1:]:
            result = getattr(result, op)(parse_set(arg, env))
        return result
    raise ParseError(f"unknown set expression {write(form)}", position_of(form))
