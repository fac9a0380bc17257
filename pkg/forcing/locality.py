"""
Locality of names.

A name F is local below a condition when its domain is dense there. The
closed class "no extension in tree(b, B ∪ b) makes F converge at x̄" is a
NOCONV tree; ϑ_b is the MAZUR submeasure over those trees for every x̄ below
the argument bound, and ϑ = ⋀_b (ϑ_b ∨ |b|) over the stems b of a window.

Either μ ∧ ϑ is still unbounded on A, and the localized condition
(a, A, μ ∧ ϑ) forces F to be total, or some stem b kills the domain of F at
an argument, which is the other branch of the dichotomy.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from opentelemetry import trace

from core.errors import InvalidCondition
from core.finsets import FinSet
from core.periodic import PeriodicSet
from core.trees import tree_strings
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit
from forcing.families import stem_window
from names.base import Name
from submeasure.checks import Unknown, Witnessed, unbounded_check
from submeasure.expressions import Const, Join, Mazur, Meet, Submeasure, meet_all
from submeasure.trees import NoConv

tracer = trace.get_tracer("forcing")


def locality_submeasure(F: Name, b: FinSet, arg_bound: int) -> Mazur:
    return Mazur(tuple(NoConv(F, b, xs) for xs in product(range(arg_bound), repeat=F.arity)))


def locality_meet(c: Condition, F: Name, budgets: Budgets) -> Submeasure:
    parts = [
        Join(locality_submeasure(F, b, budgets.values), Const(len(b)))
        for b in stem_window(c.a, c.A, budgets.extension)
    ]
    return meet_all(parts)


@dataclass(frozen=True)
class Localized:
    condition: Condition

    kind = "localized"

    def payload(self) -> dict:
        return {"kind": self.kind, "condition": self.condition.payload()}


@dataclass(frozen=True)
class DomainKilled:
    condition: Condition
    args: tuple[int, ...]

    kind = "domain-killed"

    def payload(self) -> dict:
        return {"kind": self.kind, "condition": self.condition.payload(), "args": list(self.args)}


LocalityVerdict = Localized | DomainKilled | Unknown


def never_converges(F: Name, b: FinSet, A: PeriodicSet, args: tuple[int, ...], depth: int) -> bool:
    """No τ ∈ tree(b, A) of the given length makes F converge at args."""
    return all(F.query(tau, args) is None for tau in tree_strings(b, A, depth))


def localize(c: Condition, F: Name, budgets: Budgets | None = None) -> LocalityVerdict:
    budgets = budgets or Budgets()
    with tracer.start_as_current_span("localize") as span:
        span.set_attribute("forcing.name", F.key[:256])
        nu = Meet(c.mu, locality_meet(c, F, budgets))
        verdict = unbounded_check(nu, c.A, budgets.threshold, budgets.horizon, budgets.dp)
        span.set_attribute("forcing.dichotomy", verdict.kind)
        if isinstance(verdict, Witnessed):
            return Localized(Condition(c.a, c.A, nu, verdict))

        for b in stem_window(c.a, c.A, budgets.extension):
            for args in product(range(budgets.values), repeat=F.arity):
                if not never_converges(F, b, c.A, args, budgets.depth):
                    continue
                try:
                    killed = admit(b, c.A, c.mu, budgets)
                except InvalidCondition:
                    continue
                span.set_attribute("forcing.locality", "domain-killed")
                return DomainKilled(killed, args)
        return verdict if isinstance(verdict, Unknown) else Unknown(budgets.dp)
