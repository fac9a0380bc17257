"""
Approximate forcing and the λ submeasures built from Π⁰₁ families.

(a, A, μ) approximately forces ∃w φ(w) when some y and finite a′ make
(a, A − a′, μ) force φ(y). The search here is budgeted: y < bound, and a′
ranges over subsets of restrict(A, depth) − a of size at most `extension`,
smallest first. A hit is re-certified as a full condition before it is returned.

Functions:
    lambda_submeasure(a, xs, phi, window, envelope):
        MAZUR over the closed pieces φ̂(a, B ∪ a; x̄, y) for y < window.
    approx_forces(c, phi, budgets): ApproxWitness or NotFoundUpTo.
    approx_from_witness(c, phi, F, budgets):
        reads a nullary witness name F off the tree and re-certifies the
        condition (a ∪ ones τ, A − zeros τ, μ) it points at.
    least_sigma2_index(c, phi, x0, budgets):
        least x ≤ x0 whose accumulated meet μ ∧ ν_0 ∧ ... ∧ ν_x looks bounded on A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from opentelemetry import trace

from core.errors import InvalidCondition, NotFoundUpTo
from core.finsets import BitString, FinSet
from core.periodic import PeriodicSet, nat
from formula.ast import Formula
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit
from forcing.families import family_matrix, fix_parameters, instance, stem_window
from forcing.pi1 import ForcedUpTo, counterexample, pi1_forces, pi1_matrix
from names.base import Name
from submeasure.checks import BoundedSoFar, UnboundedVerdict, unbounded_check
from submeasure.expressions import Const, Join, Mazur, Meet, Submeasure, meet_all
from submeasure.trees import Pi1Hat

tracer = trace.get_tracer("forcing")


def lambda_submeasure(
    a: FinSet,
    xs: tuple[int, ...],
    phi: Formula,
    window: int,
    envelope: PeriodicSet | None = None,
) -> Mazur:
    envelope = envelope if envelope is not None else nat()
    _, T = family_matrix(fix_parameters(phi, xs))
    return Mazur(tuple(Pi1Hat(T, a, y, envelope) for y in range(window)))


@dataclass(frozen=True)
class ApproxWitness:
    y: int
    removed: FinSet
    condition: Condition
    verdict: ForcedUpTo

    def payload(self) -> dict:
        return {
            "y": self.y,
            "removed": list(self.removed),
            "condition": self.condition.payload(),
            "verdict": self.verdict.payload(),
        }


def _removals(c: Condition, budgets: Budgets):
    free = tuple(c.A.restrict(budgets.depth).diff(c.a))
    for r in range(min(budgets.extension, len(free)) + 1):
        for chosen in combinations(free, r):
            yield FinSet(chosen)


def approx_forces(c: Condition, phi: Formula, budgets: Budgets | None = None) -> ApproxWitness:
    """phi is the family φ(w); the existential ∃w φ(w) is what gets approximated."""
    budgets = budgets or Budgets()
    with tracer.start_as_current_span("approx_forces") as span:
        for y in range(budgets.bound):
            sentence = instance(phi, y)
            n, T = pi1_matrix(sentence)
            for removed in _removals(c, budgets):
                envelope = c.A.diff(removed)
                if counterexample(c.a, envelope, T, n, budgets.depth, budgets.bound) is not None:
                    continue
                try:
                    shrunk = admit(c.a, envelope, c.mu, budgets)
                except InvalidCondition:
                    continue
                verdict = pi1_forces(shrunk, sentence, budgets)
                if isinstance(verdict, ForcedUpTo):
                    span.set_attribute("forcing.y", y)
                    span.set_attribute("forcing.removed", str(removed))
                    return ApproxWitness(y, removed, shrunk, verdict)
        span.set_attribute("forcing.verdict", "not-found")
        raise NotFoundUpTo(budgets.payload())


def approx_from_witness(
    c: Condition,
    phi: Formula,
    witness: Name,
    budgets: Budgets | None = None,
) -> ApproxWitness:
    """The shortest τ ∈ tree(a, A) on which the nullary `witness` is defined
    fixes y = F(τ); the stem and envelope then follow τ."""
    budgets = budgets or Budgets()
    if witness.arity != 0:
        raise ValueError("approx_from_witness reads a nullary name")
    with tracer.start_as_current_span("approx_from_witness") as span:
        for length in range(budgets.depth + 1):
            for tau in c.tree(length):
                y = witness.query(tau, ())
                if y is None:
                    continue
                span.set_attribute("forcing.tau", tau.bits)
                span.set_attribute("forcing.y", y)
                return _certify_along(c, phi, y, tau, budgets)
        raise NotFoundUpTo(budgets.payload())


def _certify_along(c: Condition, phi: Formula, y: int, tau: BitString, budgets: Budgets) -> ApproxWitness:
    stem = c.a.union(tau.ones())
    removed = tau.zeros().inter(c.A.restrict(len(tau)))
    shrunk = admit(stem, c.A.diff(removed), c.mu, budgets)
    verdict = pi1_forces(shrunk, instance(phi, y), budgets)
    if not isinstance(verdict, ForcedUpTo):
        raise NotFoundUpTo({**budgets.payload(), "refuted": verdict.payload()})
    return ApproxWitness(y, removed, shrunk, verdict)


# ---- Least index for Σ⁰₂ families ----

@dataclass(frozen=True)
class LeastIndexReport:
    least: int | None
    chain: tuple[tuple[int, UnboundedVerdict], ...] = field(default=())

    def payload(self) -> dict:
        return {
            "least": self.least,
            "chain": [{"x": x, "verdict": v.payload()} for x, v in self.chain],
        }


def nu_submeasure(c: Condition, phi: Formula, x: int, budgets: Budgets) -> Submeasure:
    """⋀ over stems a ⊇ a0 in the window of (λ_{a,x} ∨ |a|)."""
    parts = [
        Join(lambda_submeasure(a, (x,), phi, budgets.values, c.A), Const(len(a)))
        for a in stem_window(c.a, c.A, budgets.extension)
    ]
    return meet_all(parts)


def least_sigma2_index(c: Condition, phi: Formula, x0: int, budgets: Budgets | None = None) -> LeastIndexReport:
    """phi(u, v) is a Π⁰₁ family in two variables; x ranges over u."""
    budgets = budgets or Budgets()
    with tracer.start_as_current_span("least_sigma2_index") as span:
        chain = []
        accumulated: Submeasure = c.mu
        for x in range(x0 + 1):
            accumulated = Meet(accumulated, nu_submeasure(c, phi, x, budgets))
            verdict = unbounded_check(accumulated, c.A, budgets.threshold, budgets.horizon, budgets.dp)
            chain.append((x, verdict))
            if isinstance(verdict, BoundedSoFar):
                span.set_attribute("forcing.least", x)
                return LeastIndexReport(x, tuple(chain))
        return LeastIndexReport(None, tuple(chain))
