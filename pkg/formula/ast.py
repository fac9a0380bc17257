"""
Forcing-language syntax trees.

Terms:
    Var(index)              de Bruijn index, 0 = innermost binder
    App(name, args)         a name applied to terms
    HoleApp(chain, arg)     the Skolem hole W applied at chain(arg)

Formulas:
    Atom(left, right)       left = right
    Not, And, Forall(var, body), BForall(var, bound, body) with ∀var ≤ bound
    Or, Implies, Iff, Exists: abbreviations removed by `desugar`

Binder names are only printing hints. Free variables v_0, ..., v_{k-1} are numbered
outermost first: under d binders, v_i is Var(d + k - 1 - i), so the innermost
free variable is the last one and is the one a binder would have introduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from names.base import Name
from names.combinators import Canonical, const_name
from names.ground import Arg, GroundFunction, Lit, Op


class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class App(Term):
    name: Name
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if self.name.arity != len(self.args):
            raise ValueError(
                f"{self.name.describe()} has arity {self.name.arity}, applied to {len(self.args)} terms"
            )


@dataclass(frozen=True)
class Step:
    """even | odd | shift | pairfix(term)"""

    kind: str
    term: Term | None = None


@dataclass(frozen=True)
class HoleApp(Term):
    chain: tuple[Step, ...]
    arg: Term


class Formula:
    pass


@dataclass(frozen=True)
class Atom(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class BForall(Formula):
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


BINDERS = (Forall, BForall, Exists)


def const(n: int) -> App:
    return App(const_name(n), ())


def const_value(term: Term) -> int | None:
    """The value of a closed constant term, when it is one."""
    if isinstance(term, App) and not term.args and isinstance(term.name, Canonical):
        return term.name.fn(())
    return None


# ---- Generic traversal ----

def map_terms(phi: Formula, fn: Callable[[Term, int], Term], depth: int = 0) -> Formula:
    """Rebuild phi with fn(term, depth) applied to every top-level term."""
    if isinstance(phi, Atom):
        return Atom(fn(phi.left, depth), fn(phi.right, depth))
    if isinstance(phi, Not):
        return Not(map_terms(phi.body, fn, depth))
    if isinstance(phi, (And, Or, Implies, Iff)):
        return type(phi)(map_terms(phi.left, fn, depth), map_terms(phi.right, fn, depth))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.var, map_terms(phi.body, fn, depth + 1))
    if isinstance(phi, BForall):
        return BForall(phi.var, fn(phi.bound, depth), map_terms(phi.body, fn, depth + 1))
    raise TypeError(f"not a formula: {phi!r}")


def map_subterms(term: Term, fn: Callable[[Term], Term | None]) -> Term:
    """Bottom-up rewrite; fn returns a replacement or None to keep the node."""
    if isinstance(term, App):
        term = App(term.name, tuple(map_subterms(a, fn) for a in term.args))
    elif isinstance(term, HoleApp):
        chain = tuple(
            Step(s.kind, map_subterms(s.term, fn) if s.term is not None else None) for s in term.chain
        )
        term = HoleApp(chain, map_subterms(term.arg, fn))
    replaced = fn(term)
    return term if replaced is None else replaced


# ---- de Bruijn plumbing ----

def shift_term(term: Term, d: int, cutoff: int = 0) -> Term:
    def fn(t):
        if isinstance(t, Var) and t.index >= cutoff:
            return Var(t.index + d)
        return None

    return map_subterms(term, fn)


def shift(phi: Formula, d: int, cutoff: int = 0) -> Formula:
    return map_terms(phi, lambda t, depth: shift_term(t, d, cutoff + depth))


def subst_term(term: Term, j: int, replacement: Term) -> Term:
    """Replace Var(j) by replacement (given at the scope of j's binder's parent)
    and close the gap left by removing that binder."""

    def fn(t):
        if isinstance(t, Var):
            if t.index == j:
                return shift_term(replacement, j)
            if t.index > j:
                return Var(t.index - 1)
        return None

    return map_subterms(term, fn)


def instantiate_top(body: Formula, replacement: Term) -> Formula:
    """body[Var(0) := replacement], removing the binder that Var(0) referred to."""
    return map_terms(body, lambda t, depth: subst_term(t, depth, replacement))


def close(phi: Formula, values: tuple[int, ...] | list[int]) -> Formula:
    """Substitute naturals for the free variables v_0, ..., v_{k-1}."""
    for v in reversed(tuple(values)):
        phi = instantiate_top(phi, const(v))
    return phi


def fix_leading(phi: Formula, values: tuple[int, ...] | list[int], k: int | None = None) -> Formula:
    """Substitute naturals for v_0, ..., v_{m-1} only; the remaining free
    variables keep their indices."""
    values = tuple(values)
    k = free_count(phi) if k is None else k
    if len(values) > k:
        raise ValueError(f"{len(values)} values for {k} free variables")

    def fn(term, depth):
        def swap(t):
            if isinstance(t, Var) and t.index >= depth:
                i = k - 1 - (t.index - depth)
                if i < len(values):
                    return const(values[i])
            return None

        return map_subterms(term, swap)

    return map_terms(phi, fn)


def term_vars(term: Term) -> set[int]:
    found: set[int] = set()

    def fn(t):
        if isinstance(t, Var):
            found.add(t.index)
        return None

    map_subterms(term, fn)
    return found


def free_count(phi: Formula) -> int:
    """Number of free variables phi needs (1 + largest escaping index)."""
    best = 0

    def fn(t, depth):
        nonlocal best
        for i in term_vars(t):
            if i >= depth:
                best = max(best, i - depth + 1)
        return t

    map_terms(phi, fn)
    return best


def mentions(phi: Formula, index: int = 0) -> bool:
    """Whether the free variable with de Bruijn index `index` occurs in phi."""
    hit = False

    def fn(t, depth):
        nonlocal hit
        if index + depth in term_vars(t):
            hit = True
        return t

    map_terms(phi, fn)
    return hit


def has_hole(phi: Formula) -> bool:
    hit = False

    def probe(t):
        nonlocal hit
        if isinstance(t, HoleApp):
            hit = True
        return None

    map_terms(phi, lambda t, depth: map_subterms(t, probe))
    return hit


# ---- Hole chains ----

_DOUBLE = Canonical(GroundFunction(("t",), Op("*", (Lit(2), Arg(0)))))
_DOUBLE_PLUS_ONE = Canonical(GroundFunction(("t",), Op("+", (Op("*", (Lit(2), Arg(0))), Lit(1)))))
_SUCC = Canonical(GroundFunction(("t",), Op("+", (Arg(0), Lit(1)))))
_PAIR = Canonical(GroundFunction(("w", "t"), Op("pair", (Arg(0), Arg(1)))))


def _apply_step(step: Step, t: Term) -> Term:
    value = const_value(t)
    w = const_value(step.term) if step.term is not None else None
    if step.kind == "even":
        return const(2 * value) if value is not None else App(_DOUBLE, (t,))
    if step.kind == "odd":
        return const(2 * value + 1) if value is not None else App(_DOUBLE_PLUS_ONE, (t,))
    if step.kind == "shift":
        return const(value + 1) if value is not None else App(_SUCC, (t,))
    if step.kind == "pairfix":
        if value is not None and w is not None:
            return const(_PAIR.fn((w, value)))
        return App(_PAIR, (step.term, t))
    raise ValueError(f"unknown slice step {step.kind}")


def index_term(hole: HoleApp) -> Term:
    """The index at which the hole is read, constant-folded where possible."""
    t = hole.arg
    for step in reversed(hole.chain):
        t = _apply_step(step, t)
    return t


def fill_hole(phi: Formula, witness: Name) -> Formula:
    """Substitute a unary name for the hole everywhere."""
    if witness.arity != 1:
        raise ValueError("the hole takes a unary name")

    def fn(t):
        if isinstance(t, HoleApp):
            return App(witness, (index_term(t),))
        return None

    return map_terms(phi, lambda t, depth: map_subterms(t, fn))
