"""
Conditions (a, A, μ) and the extension orderings.

A condition carries its own validity certificate: a finite b ⊆ A with
μ(b) ≥ s. `admit` is the only way to build one from loose parts and it refuses
triples whose stem is not inside the envelope or whose measure cannot be
certified at the admission threshold within the budgets.

Orderings:
    extends(c2, c1)        a1 ⊆ a2 ⊆ A1, A2 ⊆ A1 and μ2 ≤ μ1 on the probe pool
    extends_s(c2, c1, s)   additionally μ2(a2) ≥ s and μ2 ∧ s = μ1 ∧ s on the pool

The set clauses are exact. The measure clauses are checked on a probe pool (all
subsets of a window plus seeded random sets): a failing probe is a genuine
refutation, passing probes are only evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from opentelemetry import trace

from core.errors import BudgetExceeded, InvalidCondition
from core.finsets import BitString, FinSet
from core.periodic import PeriodicSet
from core.trees import tree_member, tree_strings
from forcing.budgets import Budgets
from submeasure.checks import Witnessed, unbounded_check
from submeasure.expressions import Submeasure

tracer = trace.get_tracer("forcing")


@dataclass(frozen=True)
class Condition:
    a: FinSet
    A: PeriodicSet
    mu: Submeasure
    certificate: Witnessed

    def tree_member(self, tau: BitString) -> bool:
        return tree_member(self.a, self.A, tau)

    def tree(self, length: int) -> Iterator[BitString]:
        return tree_strings(self.a, self.A, length)

    def describe(self) -> str:
        return f"(cond {self.a.describe()} {self.A.describe()} {self.mu.describe()})"

    def payload(self) -> dict:
        return {
            "stem": list(self.a),
            "envelope": self.A.describe(),
            "measure": self.mu.key,
            "certificate": self.certificate.payload(),
        }


def admit(
    a: FinSet,
    A: PeriodicSet,
    mu: Submeasure,
    budgets: Budgets | None = None,
    threshold: int | None = None,
) -> Condition:
    budgets = budgets or Budgets()
    s0 = budgets.threshold if threshold is None else threshold
    with tracer.start_as_current_span("admit") as span:
        span.set_attribute("forcing.stem", str(a))
        if not A.contains_finset(a):
            raise InvalidCondition(f"stem {a.describe()} is not inside {A.describe()}")
        if not A.is_infinite():
            raise InvalidCondition(f"envelope {A.describe()} is finite")
        verdict = unbounded_check(mu, A, s0, budgets.horizon, budgets.dp)
        span.set_attribute("forcing.admission", verdict.kind)
        if not isinstance(verdict, Witnessed):
            raise InvalidCondition(
                f"{mu.describe()} on {A.describe()} not certified at {s0}: {verdict.kind}"
            )
        return Condition(a, A, mu, verdict)


def with_certificate(a: FinSet, A: PeriodicSet, mu: Submeasure, certificate: Witnessed) -> Condition:
    """Build a condition from an already checked certificate."""
    if not (A.contains_finset(a) and A.contains_finset(certificate.b)):
        raise InvalidCondition("certificate or stem outside the envelope")
    if mu.eval(certificate.b) < certificate.s:
        raise InvalidCondition(f"certificate value below {certificate.s}")
    return Condition(a, A, mu, certificate)


def probe_pool(budgets: Budgets | None = None, base: FinSet | None = None) -> list[FinSet]:
    """All subsets of `base` (default [0, window)) plus seeded random sets."""
    budgets = budgets or Budgets()
    base = base if base is not None else FinSet.range(budgets.window)
    pool = list(base.subsets())
    rng = random.Random(budgets.seed)
    universe = range(3 * max(budgets.window, 1))
    for _ in range(budgets.probes):
        size = rng.randint(1, min(6, len(universe)))
        pool.append(FinSet.of(rng.sample(universe, size)))
    return pool


def _measure_le(nu: Submeasure, mu: Submeasure, x: FinSet, budget: int) -> bool:
    try:
        return nu.eval(x, budget) <= mu.eval(x, budget)
    except BudgetExceeded:
        return True


def explain_extension(c2: Condition, c1: Condition, budgets: Budgets | None = None, pool=None) -> str | None:
    """The first clause of c2 ≤ c1 that fails, or None."""
    budgets = budgets or Budgets()
    if not c1.a.issubset(c2.a):
        return f"stem {c2.a.describe()} does not contain {c1.a.describe()}"
    if not c1.A.contains_finset(c2.a):
        return f"stem {c2.a.describe()} leaves {c1.A.describe()}"
    if not c2.A.issubset(c1.A):
        return f"envelope {c2.A.describe()} is not inside {c1.A.describe()}"
    if c2.mu.key != c1.mu.key:
        for x in pool if pool is not None else probe_pool(budgets):
            if not _measure_le(c2.mu, c1.mu, x, budgets.dp):
                return f"measure grows at {x.describe()}"
    return None


def extends(c2: Condition, c1: Condition, budgets: Budgets | None = None, pool=None) -> bool:
    return explain_extension(c2, c1, budgets, pool) is None


def explain_extension_s(
    c2: Condition, c1: Condition, s: int, budgets: Budgets | None = None, pool=None
) -> str | None:
    budgets = budgets or Budgets()
    pool = pool if pool is not None else probe_pool(budgets)
    reason = explain_extension(c2, c1, budgets, pool)
    if reason is not None:
        return reason
    if c2.mu.eval(c2.a, budgets.dp) < s:
        return f"stem measure below {s}"
    if c2.mu.key != c1.mu.key:
        for x in pool:
            try:
                if min(c2.mu.eval(x, budgets.dp), s) != min(c1.mu.eval(x, budgets.dp), s):
                    return f"truncations at {s} differ on {x.describe()}"
            except BudgetExceeded:
                continue
    return None


def extends_s(c2: Condition, c1: Condition, s: int, budgets: Budgets | None = None, pool=None) -> bool:
    return explain_extension_s(c2, c1, s, budgets, pool) is None
