"""
Grammar for names and ground terms.

Names:
    n                           canonical constant (nullary)
    (canon term)                parameters are the term's symbols, in order of appearance
    (canon (p ...) term)        explicit parameter list
    (superpose F F1 ...)   (lift k F)   (primrec F0 F)   (bsum B T)   (fix F (n ...))
    (chi)   (enum)   (nowhere k)   (table (("bits" x y) ...))
    (slice even|odd|shift|head|(pairfix w) F)
    label                       a Name defined in the manifest

Ground terms:
    n   symbol   (+ t t)   (* t t)   (- t t)   (absdiff t t)   (pair t t)
    (fst t)   (snd t)   (half t)   (tab (table k0 v0 ...) (affine a b) t)
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
from core.syntax import parse_bits, resolve_label
from names.base import Name
from names.combinators import (
    BoundedSum,
    Canonical,
    EmptyName,
    Fix,
    PrimRec,
    Superpose,
    const_name,
)
from names.ground import OPERATORS, Arg, GroundFunction, GroundTerm, Lit, Op, Tab
from names.oracle import SLICE_KINDS, GenericChi, GenericEnum, Slice, TuringTable


def parse_name(form, env: Mapping[str, object] | None = None) -> Name:
    if isinstance(form, str) and not isinstance(form, Symbol):
        form = read_one(form)
    if isinstance(form, int):
        return const_name(expect_int(form))
    if isinstance(form, Symbol):
        return resolve_label(form, env, Name)

    op = head(form)
    args = form[1:] if isinstance(form, list) else []
    try:
        return _parse_name(op, form, args, env)
    except ValueError as e:
        raise ParseError(f"ill-formed name {write(form)}: {e}", position_of(form)) from e


def _parse_name(op, form, args, env) -> Name:
    if op == "canon":
        return Canonical(parse_ground(args, form))
    if op == "superpose":
        if not args:
            raise arity_error(form, "at least 1")
        outer = parse_name(args[0], env)
        inner = tuple(parse_name(a, env) for a in args[1:])
        if not inner:
            raise ParseError("superposing no names needs (lift k F)", position_of(form))
        return Superpose(outer, inner, inner[0].arity)
    if op == "lift":
        if len(args) != 2:
            raise arity_error(form, 2)
        return Superpose(parse_name(args[1], env), (), expect_int(args[0]))
    if op == "primrec":
        if len(args) != 2:
            raise arity_error(form, 2)
        return PrimRec(parse_name(args[0], env), parse_name(args[1], env))
    if op == "bsum":
        if len(args) != 2:
            raise arity_error(form, 2)
        return BoundedSum(parse_name(args[0], env), parse_name(args[1], env))
    if op == "fix":
        if len(args) != 2:
            raise arity_error(form, 2)
        values = tuple(expect_int(v) for v in expect_list(args[1], "value list"))
        return Fix(parse_name(args[0], env), values)
    if op == "chi":
        return GenericChi()
    if op == "enum":
        return GenericEnum()
    if op == "nowhere":
        if len(args) != 1:
            raise arity_error(form, 1)
        return EmptyName(expect_int(args[0]))
    if op == "table":
        if len(args) != 1:
            raise arity_error(form, 1)
        entries = []
        for entry in expect_list(args[0], "table entry list"):
            entry = expect_list(entry, "table entry")
            if len(entry) != 3:
                raise ParseError("table entries are (\"bits\" x y)", position_of(entry))
            entries.append((parse_bits(entry[0]), expect_int(entry[1]), expect_int(entry[2])))
        return TuringTable(tuple(entries))
    if op == "slice":
        if len(args) != 2:
            raise arity_error(form, 2)
        kind, child = args[0], parse_name(args[1], env)
        if head(kind) == "pairfix":
            if len(kind) != 2:
                raise arity_error(kind, 1)
            return Slice(child, "pairfix", expect_int(kind[1]))
        if not isinstance(kind, Symbol) or str(kind) not in SLICE_KINDS:
            raise ParseError(f"unknown slice kind {write(kind)}", position_of(kind))
        return Slice(child, str(kind))
    raise ParseError(f"unknown name expression {write(form)}", position_of(form))


def parse_ground(args, form=None) -> GroundFunction:
    """Body of a `(canon ...)` form."""
    if len(args) == 1:
        params: list[str] = []
        body = parse_term(args[0], params, infer=True)
        return GroundFunction(tuple(params), body, explicit=False)
    if len(args) == 2:
        declared = expect_list(args[0], "parameter list")
        params = []
        for p in declared:
            if not isinstance(p, Symbol):
                raise ParseError(f"parameters are symbols, got {write(p)}", position_of(p))
            params.append(str(p))
        if len(set(params)) != len(params):
            raise ParseError("duplicate parameter", position_of(args[0]))
        return GroundFunction(tuple(params), parse_term(args[1], params, infer=False))
    raise arity_error(form, "1 or 2") if form is not None else ParseError("bad canon form")


def parse_term(form, params: list[str], infer: bool) -> GroundTerm:
    if isinstance(form, int):
        return Lit(expect_int(form))
    if isinstance(form, Symbol):
        name = str(form)
        if name not in params:
            if not infer:
                raise ParseError(f"unknown parameter '{name}'", position_of(form))
            params.append(name)
        return Arg(params.index(name))
    op = head(form)
    if op == "tab":
        if len(form) != 4 or head(form[1]) != "table" or head(form[2]) != "affine":
            raise ParseError("expected (tab (table ...) (affine a b) t)", position_of(form))
        return Tab(*parse_table(form[1], form[2]), parse_term(form[3], params, infer))
    if op in OPERATORS:
        operands = tuple(parse_term(a, params, infer) for a in form[1:])
        if len(operands) != OPERATORS[op]:
            raise arity_error(form, OPERATORS[op])
        return Op(op, operands)
    raise ParseError(f"unknown ground term {write(form)}", position_of(form))


def parse_table(table_form, affine_form) -> tuple[tuple[int, ...], int, int]:
    """`(table k0 v0 k1 v1 ...)` with keys 0..n-1 in order, plus `(affine a b)`."""
    flat = [expect_int(v) for v in table_form[1:]]
    if len(flat) % 2:
        raise ParseError("table needs key/value pairs", position_of(table_form))
    keys, values = flat[0::2], flat[1::2]
    if keys != list(range(len(keys))):
        raise ParseError("table keys must be 0, 1, 2, ... in order", position_of(table_form))
    if len(affine_form) != 3:
        raise arity_error(affine_form, 2)
    return tuple(values), expect_int(affine_form[1]), expect_int(affine_form[2])
