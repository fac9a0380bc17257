"""
Stage handlers for fusion runs.

A handler tells the fusion template what stage s is about: the scheduled
item, the stem b_s it is conditional on, the submeasure λ_s whose
dichotomy decides the case, and how to shrink the envelope when
(μ_s ∧ λ_s)(A_s) stays bounded.

Classes:
    ConstantHandler:   λ = CONST(0); always the bounded case, envelope unchanged.
    StarFusionHandler: items ⟨b, x̄⟩, λ = lambda_submeasure(b, x̄, φ); the bounded
                       case shrinks A to an envelope on which (b, ·) forces φ(x̄, y).
    ConeHandler:       items ⟨e, b⟩, κ = MAZUR over STAB(Φ_e, b); the bounded case
                       picks the leftmost stabilizing branch to depth L.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

from opentelemetry import trace

from core.errors import InvalidCondition
from core.finsets import BitString, FinSet
from core.pairing import fst, snd, untuple
from core.periodic import PeriodicSet
from core.trees import tree_strings
from formula.ast import Formula
from forcing.approx import lambda_submeasure
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit
from forcing.families import candidate_envelopes, fix_parameters, instance
from forcing.pi1 import counterexample, pi1_forces, pi1_matrix
from names.base import Name
from submeasure.expressions import Const, Mazur, Submeasure
from submeasure.trees import Stab

tracer = trace.get_tracer("forcing")


class StageHandler(ABC):
    name = "handler"

    def item(self, s: int) -> Any:
        return s

    def stem(self, item: Any) -> FinSet | None:
        """b_s, or None when the stage has no stem precondition."""
        return None

    def describe_item(self, item: Any) -> dict:
        return {"item": item}

    @abstractmethod
    def submeasure(self, item: Any, c: Condition, budgets: Budgets) -> Submeasure:
        ...

    @abstractmethod
    def shrink(self, item: Any, c: Condition, budgets: Budgets) -> tuple[Condition, dict]:
        ...


class ConstantHandler(StageHandler):
    name = "constant"

    def submeasure(self, item, c, budgets):
        return Const(0)

    def shrink(self, item, c, budgets):
        return c, {"envelope": "unchanged"}


@dataclass(frozen=True)
class StarItem:
    b: FinSet
    xs: tuple[int, ...]


class StarFusionHandler(StageHandler):
    """phi(x̄, w) is a Π⁰₁ family with `arity` parameters before w."""

    name = "star"

    def __init__(self, phi: Formula, arity: int):
        self.phi = phi
        self.arity = arity

    def item(self, s):
        n = fst(s)
        return StarItem(FinSet.from_code(fst(n)), untuple(snd(n), self.arity))

    def stem(self, item):
        return item.b

    def describe_item(self, item):
        return {"b": list(item.b), "x": list(item.xs)}

    def submeasure(self, item, c, budgets):
        return lambda_submeasure(item.b, item.xs, self.phi, budgets.values, c.A)

    def shrink(self, item, c, budgets):
        family = fix_parameters(self.phi, item.xs)
        for y in range(budgets.values):
            sentence = instance(family, y)
            n, T = pi1_matrix(sentence)
            for envelope in candidate_envelopes(c.A, c.a, budgets.window):
                if counterexample(item.b, envelope, T, n, budgets.depth, budgets.bound) is not None:
                    continue
                try:
                    shrunk = admit(c.a, envelope, c.mu, budgets)
                except InvalidCondition:
                    continue
                piece = Condition(item.b, envelope, c.mu, shrunk.certificate)
                verdict = pi1_forces(piece, sentence, budgets)
                return shrunk, {"y": y, "envelope": envelope.describe(), "forced": verdict.payload()}
        return c, {"undecided": True}


@dataclass(frozen=True)
class ConeItem:
    e: int
    b: FinSet


def stabilizes(functional: Name, b: FinSet, C: PeriodicSet, depth: int) -> bool:
    """Every two strings of tree(b, C ∪ b) up to the depth give equal outputs
    wherever both converge."""
    strings = list(tree_strings(b, C.union(b), depth))
    for x in range(depth):
        outputs = {functional.query(tau, (x,)) for tau in strings} - {None}
        if len(outputs) > 1:
            return False
    return True


class ConeHandler(StageHandler):
    name = "cone"

    def __init__(self, functionals: list[Name] | tuple[Name, ...]):
        self.functionals = tuple(functionals)

    def item(self, s):
        if not self.functionals:
            return None
        n = fst(s)
        return ConeItem(fst(n) % len(self.functionals), FinSet.from_code(snd(n)))

    def stem(self, item):
        return item.b if item is not None else None

    def describe_item(self, item):
        if item is None:
            return {}
        return {"e": item.e, "b": list(item.b)}

    def tree(self, item: ConeItem) -> Stab:
        return Stab(self.functionals[item.e], item.b)

    def submeasure(self, item, c, budgets):
        return Mazur((self.tree(item),))

    def leftmost_branch(self, item: ConeItem, c: Condition, length: int) -> BitString:
        """The leftmost-in-ones branch of STAB(Φ_e, b) of the given length that
        keeps b and stays inside the envelope. STAB is closed under prefixes,
        so a depth-first search with ones tried first finds it."""
        stab = self.tree(item)

        def extend(sigma: BitString) -> BitString | None:
            i = len(sigma)
            if i == length:
                return sigma
            if i in item.b:
                bits = "1"
            elif i in c.A:
                bits = "10"
            else:
                bits = "0"
            for bit in bits:
                longer = sigma.extend(bit)
                if stab.contains(longer):
                    found = extend(longer)
                    if found is not None:
                        return found
            return None

        branch = extend(BitString())
        if branch is None:
            raise InvalidCondition(f"no stabilizing branch of length {length} through {item.b.describe()}")
        return branch

    def shrink(self, item, c, budgets):
        length = budgets.depth
        with tracer.start_as_current_span("cone_shrink") as span:
            sigma = self.leftmost_branch(item, c, length)
            chosen = c.A.diff(FinSet.range(length)).union(sigma.ones())
            envelope = chosen.union(c.a)
            stabilized = self.tree(item).contains(chosen.characteristic(length))
            span.set_attribute("fusion.branch", sigma.bits)
            span.set_attribute("fusion.stabilized", stabilized)
            shrunk = admit(c.a, envelope, c.mu, budgets)
        return shrunk, {
            "sigma": sigma.bits,
            "class": chosen.describe(),
            "envelope": envelope.describe(),
            "stabilized": stabilized,
        }
