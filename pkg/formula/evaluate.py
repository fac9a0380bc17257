"""
Brute-force three-valued evaluation of formulas against a concrete oracle.

Truth values are True, False and None (unknown). Names are queried on the
oracle prefix of length `depth`; an undefined query makes the atom unknown.
Bounded quantifiers are evaluated exhaustively. An unbounded ∀v is scanned over
v < bound: a counterexample gives False, and True is only returned when the
body does not mention v after simplification. Raising either budget never
turns True into False or back; it only resolves unknowns.
"""

from __future__ import annotations

from typing import Iterable

from opentelemetry import trace

from config.settings import DEPTH, QUANTIFIER_BOUND
from core.finsets import BitString
from core.periodic import PeriodicSet
from formula.ast import (
    App,
    And,
    Atom,
    BForall,
    Forall,
    Formula,
    HoleApp,
    Not,
    Term,
    Var,
    const,
    mentions,
)
from formula.classes import desugar

tracer = trace.get_tracer("formula")

Trool = bool | None

_TRUE = Atom(const(0), const(0))


def trool_not(x: Trool) -> Trool:
    return None if x is None else not x


def trool_all(values: Iterable[Trool]) -> Trool:
    result: Trool = True
    for x in values:
        if x is False:
            return False
        if x is None:
            result = None
    return result


def trool_any(values: Iterable[Trool]) -> Trool:
    result: Trool = False
    for x in values:
        if x is True:
            return True
        if x is None:
            result = None
    return result


def simplify(phi: Formula) -> Formula:
    """Replace syntactically reflexive equations by 0 = 0."""
    if isinstance(phi, Atom):
        return _TRUE if phi.left == phi.right else phi
    if isinstance(phi, Not):
        return Not(simplify(phi.body))
    if isinstance(phi, And):
        return And(simplify(phi.left), simplify(phi.right))
    if isinstance(phi, Forall):
        return Forall(phi.var, simplify(phi.body))
    if isinstance(phi, BForall):
        return BForall(phi.var, phi.bound, simplify(phi.body))
    raise TypeError(f"not a formula: {phi!r}")


def term_value(term: Term, tau: BitString, stack: tuple[int, ...]) -> int | None:
    """Value of a term with de Bruijn index i bound to stack[i]."""
    if isinstance(term, Var):
        if term.index >= len(stack):
            raise ValueError(f"unbound variable #{term.index}")
        return stack[term.index]
    if isinstance(term, App):
        args = []
        for a in term.args:
            v = term_value(a, tau, stack)
            if v is None:
                return None
            args.append(v)
        return term.name.query(tau, tuple(args))
    if isinstance(term, HoleApp):
        raise ValueError("fill the Skolem hole before evaluating")
    raise TypeError(f"not a term: {term!r}")


def _eval(phi: Formula, tau: BitString, stack: tuple[int, ...], bound: int) -> Trool:
    if isinstance(phi, Atom):
        left = term_value(phi.left, tau, stack)
        if left is None:
            return None
        right = term_value(phi.right, tau, stack)
        if right is None:
            return None
        return left == right
    if isinstance(phi, Not):
        return trool_not(_eval(phi.body, tau, stack, bound))
    if isinstance(phi, And):
        left = _eval(phi.left, tau, stack, bound)
        if left is False:
            return False
        right = _eval(phi.right, tau, stack, bound)
        return trool_all((left, right))
    if isinstance(phi, BForall):
        n = term_value(phi.bound, tau, stack)
        if n is None:
            return None
        return trool_all(_eval(phi.body, tau, (w, *stack), bound) for w in range(n + 1))
    if isinstance(phi, Forall):
        if not mentions(phi.body, 0):
            return _eval(phi.body, tau, (0, *stack), bound)
        scanned = trool_all(_eval(phi.body, tau, (w, *stack), bound) for w in range(bound))
        return False if scanned is False else None
    raise TypeError(f"not a formula: {phi!r}")


def oracle_prefix(oracle: PeriodicSet | BitString, depth: int) -> BitString:
    if isinstance(oracle, BitString):
        return oracle if len(oracle) <= depth else oracle.prefix(depth)
    return oracle.characteristic(depth)


def classical_eval(
    phi: Formula,
    oracle: PeriodicSet | BitString,
    bound: int = QUANTIFIER_BOUND,
    depth: int = DEPTH,
    env: tuple[int, ...] | list[int] = (),
) -> Trool:
    """Evaluate phi with free variables v_0, ..., v_{k-1} set to env."""
    tau = oracle_prefix(oracle, depth)
    phi = simplify(desugar(phi))
    with tracer.start_as_current_span("classical_eval") as span:
        span.set_attribute("formula.bound", bound)
        span.set_attribute("formula.depth", depth)
        result = _eval(phi, tau, tuple(reversed(tuple(env))), bound)
        span.set_attribute("formula.verdict", "unknown" if result is None else str(result).lower())
        return result
