"""
Budgeted certification of μ(A) = ∞ on an eventually periodic set, and the finite
shadow of the meet decomposition.

Functions:
    unbounded_check(mu, A, target, horizon, budget):
        - Scans the prefixes restrict(A, n) in increasing order and returns
          Witnessed(target, b) for the first prefix b with μ(b) ≥ target.
        - BoundedSoFar(horizon, v) when every prefix was evaluated and the full
          prefix still has value v < target.
        - When a prefix outgrows the DP budget, falls back to small blocks:
          greedy accumulation of value-increasing elements, then consecutive
          blocks. By monotonicity any block value bounds μ(restrict(A, n)) from
          below, so a block reaching the target is a sound Witnessed; otherwise Unknown.
    fin_generated_check(mu, nu, A, horizon): explicit split search on
        restrict(A, horizon) compared with the MEET dynamic program.

Verdicts never claim μ(A) < ∞ outright.
"""

from __future__ import annotations

from dataclasses import dataclass

from opentelemetry import trace

from config.settings import DP_BUDGET
from core.errors import BudgetExceeded
from core.finsets import FinSet
from core.periodic import PeriodicSet
from submeasure.expressions import Meet, Submeasure
from submeasure.mazur import _subset_codes

tracer = trace.get_tracer("submeasure")


@dataclass(frozen=True)
class Witnessed:
    s: int
    b: FinSet

    kind = "witnessed"

    def payload(self) -> dict:
        return {"kind": self.kind, "s": self.s, "b": list(self.b)}


@dataclass(frozen=True)
class BoundedSoFar:
    n: int
    value: int

    kind = "bounded"

    def payload(self) -> dict:
        return {"kind": self.kind, "n": self.n, "value": self.value}


@dataclass(frozen=True)
class Unknown:
    budget: int

    kind = "unknown"

    def payload(self) -> dict:
        return {"kind": self.kind, "budget": self.budget}


UnboundedVerdict = Witnessed | BoundedSoFar | Unknown


def _block_search(mu: Submeasure, elements: tuple[int, ...], target: int, limit: int):
    block: list[int] = []
    value = 0
    for e in elements:
        if len(block) >= limit:
            break
        try:
            candidate = mu.eval(FinSet(tuple(block + [e])), limit)
        except BudgetExceeded:
            break
        if candidate > value:
            block.append(e)
            value = candidate
            if value >= target:
                return FinSet(tuple(block))

    for start in range(0, len(elements), limit):
        chunk = FinSet(elements[start:start + limit])
        try:
            if mu.eval(chunk, limit) >= target:
                return chunk
        except BudgetExceeded:
            return None
    return None


def unbounded_check(
    mu: Submeasure,
    A: PeriodicSet,
    target: int,
    horizon: int,
    budget: int | None = None,
) -> UnboundedVerdict:
    limit = DP_BUDGET if budget is None else budget
    with tracer.start_as_current_span("unbounded_check") as span:
        span.set_attribute("submeasure.expression", mu.key[:256])
        span.set_attribute("submeasure.target", target)
        span.set_attribute("submeasure.horizon", horizon)

        elements = A.restrict(horizon).elements
        value = 0
        for k in range(1, len(elements) + 1):
            prefix = FinSet(elements[:k])
            try:
                value = mu.eval(prefix, budget)
            except BudgetExceeded as e:
                span.add_event("prefix scan exceeded budget", {"size": e.size})
                break
            if value >= target:
                span.set_attribute("submeasure.verdict", "witnessed")
                return Witnessed(target, prefix)
        else:
            span.set_attribute("submeasure.verdict", "bounded")
            return BoundedSoFar(horizon, value)

        block = _block_search(mu, elements, target, limit)
        if block is not None:
            span.set_attribute("submeasure.verdict", "witnessed")
            return Witnessed(target, block)
        span.set_attribute("submeasure.verdict", "unknown")
        return Unknown(limit)


def recheck_witnessed(mu: Submeasure, A: PeriodicSet, verdict: Witnessed) -> bool:
    """Definition-level re-validation: b ⊆ A and μ(b) ≥ s."""
    return A.contains_finset(verdict.b) and mu.eval(verdict.b) >= verdict.s


@dataclass(frozen=True)
class MeetReport:
    value: int
    left: FinSet
    right: FinSet
    meet_value: int

    @property
    def agrees(self) -> bool:
        return self.value == self.meet_value

    def payload(self) -> dict:
        return {
            "value": self.value,
            "split": [list(self.left), list(self.right)],
            "meet_value": self.meet_value,
            "agrees": self.agrees,
        }


def fin_generated_check(
    mu: Submeasure,
    nu: Submeasure,
    A: PeriodicSet,
    horizon: int,
    budget: int | None = None,
) -> MeetReport:
    limit = DP_BUDGET if budget is None else budget
    x = A.restrict(horizon)
    if len(x) > limit:
        raise BudgetExceeded(limit, len(x), "split search")
    with tracer.start_as_current_span("fin_generated_check") as span:
        codes = _subset_codes(x)
        full = codes[-1]
        best, best_code = None, 0
        for code in codes:
            candidate = mu.eval(FinSet.from_code(code), budget) + nu.eval(
                FinSet.from_code(full ^ code), budget
            )
            if best is None or candidate < best:
                best, best_code = candidate, code
        report = MeetReport(
            value=best,
            left=FinSet.from_code(best_code),
            right=FinSet.from_code(full ^ best_code),
            meet_value=Meet(mu, nu).eval(x, budget),
        )
        span.set_attribute("submeasure.value", report.value)
        span.set_attribute("submeasure.agrees", report.agrees)
        return report
