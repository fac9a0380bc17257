"""
Surface grammar for formulas.

    (atom F (v ...) F' (v ...))     F(v...) = F'(v...)
    (atom T T')                     two terms
    (not φ)  (and φ ψ)  (forall v φ)
    (ball v T φ)  (ball v F (v ...) φ)      ∀v ≤ bound
    (or φ ψ)  (implies φ ψ)  (iff φ ψ)  (exists v φ)

Terms: a variable symbol, a natural (nullary constant), `(app F (T ...))`,
`(hole (step ...) T)` with steps `even`, `odd`, `shift`, `(pairfix T)`.

Functions:
    parse_formula(text, env, free): symbols not bound by a quantifier must be
        listed in `free`; with free=None they are collected in order of first
        appearance and can be read back with parse_family.
    parse_family(text, env): (formula, free variable names).
    print_formula(phi, free): the inverse of parse_formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from core.errors import ParseError
from core.reader import (
    Symbol,
    arity_error,
    expect_list,
    head,
    position_of,
    read_one,
    write,
)
from formula.ast import (
    App,
    Atom,
    BForall,
    And,
    Exists,
    Forall,
    Formula,
    HoleApp,
    Iff,
    Implies,
    Not,
    Or,
    Step,
    Term,
    Var,
    const,
    const_value,
    map_subterms,
    map_terms,
)
from names.syntax import parse_name

_KEYWORDS = {"atom", "not", "and", "or", "implies", "iff", "forall", "exists", "ball"}


@dataclass(frozen=True)
class _Free(Term):
    name: str


class _Parser:
    def __init__(self, env, free):
        self.env = env
        self.collect = free is None
        self.free: list[str] = [] if free is None else list(free)

    # ---- formulas ----

    def formula(self, form, bound: list[str]) -> Formula:
        op = head(form)
        args = form[1:] if isinstance(form, list) else []
        if op == "atom":
            return self.atom(form, args, bound)
        if op == "not":
            if len(args) != 1:
                raise arity_error(form, 1)
            return Not(self.formula(args[0], bound))
        if op in ("and", "or", "implies", "iff"):
            if len(args) != 2:
                raise arity_error(form, 2)
            cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[op]
            return cls(self.formula(args[0], bound), self.formula(args[1], bound))
        if op in ("forall", "exists"):
            if len(args) != 2:
                raise arity_error(form, 2)
            var = self.binder(args[0])
            cls = Forall if op == "forall" else Exists
            return cls(var, self.formula(args[1], [var, *bound]))
        if op == "ball":
            if len(args) == 3:
                var, bound_term, body = self.binder(args[0]), self.term(args[1], bound), args[2]
            elif len(args) == 4:
                var = self.binder(args[0])
                bound_term = self.application(args[1], args[2], bound)
                body = args[3]
            else:
                raise arity_error(form, "3 or 4")
            return BForall(var, bound_term, self.formula(body, [var, *bound]))
        raise ParseError(f"expected a formula, got {write(form)}", position_of(form))

    def binder(self, form) -> str:
        if not isinstance(form, Symbol) or str(form) in _KEYWORDS:
            raise ParseError(f"expected a variable, got {write(form)}", position_of(form))
        return str(form)

    def atom(self, form, args, bound) -> Atom:
        if len(args) == 4:
            return Atom(
                self.application(args[0], args[1], bound),
                self.application(args[2], args[3], bound),
            )
        if len(args) == 2:
            return Atom(self.term(args[0], bound), self.term(args[1], bound))
        raise arity_error(form, "2 or 4")

    # ---- terms ----

    def application(self, name_form, args_form, bound) -> App:
        name = parse_name(name_form, self.env)
        terms = tuple(self.term(a, bound) for a in expect_list(args_form, "argument list"))
        if name.arity != len(terms):
            raise ParseError(
                f"{write(name_form)} has arity {name.arity}, applied to {len(terms)} arguments",
                position_of(name_form),
            )
        return App(name, terms)

    def term(self, form, bound) -> Term:
        if isinstance(form, int):
            if form < 0:
                raise ParseError("negative constant", None)
            return const(form)
        if isinstance(form, Symbol):
            name = str(form)
            if name in bound:
                return Var(bound.index(name))
            if name not in self.free:
                if not self.collect:
                    raise ParseError(f"unbound variable '{name}'", position_of(form))
                self.free.append(name)
            return _Free(name)
        op = head(form)
        if op == "app":
            if len(form) != 3:
                raise arity_error(form, 2)
            return self.application(form[1], form[2], bound)
        if op == "hole":
            if len(form) != 3:
                raise arity_error(form, 2)
            steps = tuple(self.step(s, bound) for s in expect_list(form[1], "slice chain"))
            return HoleApp(steps, self.term(form[2], bound))
        return self.application(form, [], bound)

    def step(self, form, bound) -> Step:
        if isinstance(form, Symbol) and str(form) in ("even", "odd", "shift"):
            return Step(str(form))
        if head(form) == "pairfix" and len(form) == 2:
            return Step("pairfix", self.term(form[1], bound))
        raise ParseError(f"unknown slice step {write(form)}", position_of(form))

    # ---- free variables ----

    def resolve(self, phi: Formula) -> Formula:
        k = len(self.free)

        def fn(term, depth):
            def swap(t):
                if isinstance(t, _Free):
                    return Var(depth + k - 1 - self.free.index(t.name))
                return None

            return map_subterms(term, swap)

        return map_terms(phi, fn)


def parse_family(text, env: Mapping[str, object] | None = None, free=None) -> tuple[Formula, tuple[str, ...]]:
    form = read_one(text) if isinstance(text, str) and not isinstance(text, Symbol) else text
    parser = _Parser(env, free)
    phi = parser.formula(form, [])
    return parser.resolve(phi), tuple(parser.free)


def parse_formula(text, env: Mapping[str, object] | None = None, free=None) -> Formula:
    return parse_family(text, env, free)[0]


# ---- printing ----

def print_formula(phi: Formula, free: tuple[str, ...] | list[str] | None = None) -> str:
    if free is None:
        from formula.ast import free_count

        free = tuple(f"v{i}" for i in range(free_count(phi)))
    scope = list(reversed(tuple(free)))
    return _print(phi, scope)


def _fresh(var: str, scope: list[str]) -> str:
    name, n = var, 1
    while name in scope:
        name = f"{var}{n}"
        n += 1
    return name


def _print(phi: Formula, scope: list[str]) -> str:
    if isinstance(phi, Atom):
        left, right = phi.left, phi.right
        if _is_application(left) and _is_application(right):
            return f"(atom {_print_app(left, scope)} {_print_app(right, scope)})"
        return f"(atom {print_term(left, scope)} {print_term(right, scope)})"
    if isinstance(phi, Not):
        return f"(not {_print(phi.body, scope)})"
    if isinstance(phi, (And, Or, Implies, Iff)):
        op = {And: "and", Or: "or", Implies: "implies", Iff: "iff"}[type(phi)]
        return f"({op} {_print(phi.left, scope)} {_print(phi.right, scope)})"
    if isinstance(phi, (Forall, Exists)):
        var = _fresh(phi.var, scope)
        op = "forall" if isinstance(phi, Forall) else "exists"
        return f"({op} {var} {_print(phi.body, [var, *scope])})"
    if isinstance(phi, BForall):
        var = _fresh(phi.var, scope)
        bound = phi.bound
        if _is_application(bound):
            bound_text = _print_app(bound, scope)
        else:
            bound_text = print_term(bound, scope)
        return f"(ball {var} {bound_text} {_print(phi.body, [var, *scope])})"
    raise TypeError(f"not a formula: {phi!r}")


def _is_application(term: Term) -> bool:
    return isinstance(term, App) and const_value(term) is None and all(isinstance(a, Var) for a in term.args)


def _print_app(term: App, scope) -> str:
    args = " ".join(print_term(a, scope) for a in term.args)
    return f"{term.name.describe()} ({args})"


def print_term(term: Term, scope: list[str]) -> str:
    if isinstance(term, Var):
        if term.index < len(scope):
            return scope[term.index]
        return f"#{term.index}"
    value = const_value(term)
    if value is not None and term == const(value):
        return str(value)
    if isinstance(term, App):
        args = " ".join(print_term(a, scope) for a in term.args)
        return f"(app {term.name.describe()} ({args}))"
    if isinstance(term, HoleApp):
        steps = " ".join(
            s.kind if s.term is None else f"(pairfix {print_term(s.term, scope)})" for s in term.chain
        )
        return f"(hole ({steps}) {print_term(term.arg, scope)})"
    raise TypeError(f"not a term: {term!r}")
