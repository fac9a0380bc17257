"""
Dense requirements for finite-stage generics, and the graph nodes that apply
them round-robin.

Requirements:
    MeasureAtLeast(s)   grow the stem to μ(a) ≥ s (s defaults to stage + 1)
    DecideSet(R)        commit to A ∩ R or A − R, whichever side stays a condition
    Pi2(φ)              decide ∀w ¬φ(w) / ∃w φ(w) with pi2_decide
    AvoidDominating(F)  fold DOM(F) into μ; without F, the growth function
                        read off the condition: F(0) = 0 and F(n) the first
                        m ∈ A with μ(A ∩ [F(n−1), m)) ≥ n

Each requirement returns the extension and a JSON-ready record body.
"""

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass

from opentelemetry import trace

from core.errors import BudgetExceeded, InvalidCondition
from core.finsets import FinSet
from core.periodic import PeriodicSet
from formula.ast import Formula
from formula.syntax import print_formula
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit, explain_extension
from forcing.pi2 import pi2_decide
from forcing.stages import grow_to
from submeasure.checks import Witnessed
from submeasure.expressions import Dom, Meet, Submeasure
from submeasure.trees import Growth

tracer = trace.get_tracer("generic")


class DenseSpec(ABC):
    kind = "requirement"

    @abstractmethod
    def apply(self, c: Condition, stage: int, budgets: Budgets) -> tuple[Condition, dict]:
        ...

    @abstractmethod
    def describe(self) -> str:
        ...


@dataclass(frozen=True)
class MeasureAtLeast(DenseSpec):
    s: int | None = None

    kind = "measure"

    def apply(self, c, stage, budgets):
        target = self.s if self.s is not None else stage + 1
        a, value = grow_to(c, target, budgets.horizon, budgets.dp)
        if value < target:
            raise InvalidCondition(f"no stem of measure {target} within {budgets.horizon} elements")
        grown = Condition(a, c.A, c.mu, c.certificate)
        return grown, {"target": target, "stem_certificate": Witnessed(target, a).payload()}

    def describe(self):
        return f"(measure {self.s})" if self.s is not None else "(measure)"


@dataclass(frozen=True)
class DecideSet(DenseSpec):
    R: PeriodicSet

    kind = "decide"

    def apply(self, c, stage, budgets):
        sides = (("inside", c.A.inter(self.R)), ("outside", c.A.diff(self.R)))
        for side, part in sides:
            try:
                chosen = admit(c.a, part.union(c.a), c.mu, budgets)
            except InvalidCondition:
                continue
            return chosen, {
                "set": self.R.describe(),
                "side": side,
                "certificate": chosen.certificate.payload(),
            }
        raise InvalidCondition(f"neither side of {self.R.describe()} keeps the measure unbounded")

    def describe(self):
        return f"(decide {self.R.describe()})"


@dataclass(frozen=True)
class Pi2(DenseSpec):
    phi: Formula

    kind = "pi2"

    def apply(self, c, stage, budgets):
        report = pi2_decide(c, self.phi, budgets)
        if report.branch == "unknown":
            raise InvalidCondition(f"Π⁰₂ decision unknown: {report.dichotomy.kind}")
        return report.condition, report.payload()

    def describe(self):
        return f"(pi2 {print_formula(self.phi)})"


def traditional_growth(c: Condition, budgets: Budgets) -> Growth:
    """F(0) = 0, F(n) = first m ∈ A with μ(A ∩ [F(n−1), m)) ≥ n, up to `window`
    values, continued by the last difference."""
    values = [0]
    elements = c.A.restrict(budgets.horizon).elements
    for n in range(1, budgets.window):
        previous = values[-1]
        found = None
        for m in elements:
            if m <= previous:
                continue
            block = FinSet(tuple(e for e in elements if previous <= e < m))
            if c.mu.eval(block, budgets.dp) >= n:
                found = m
                break
        if found is None:
            break
        values.append(found)
    step = max(1, values[-1] - values[-2]) if len(values) > 1 else 1
    return Growth(tuple(values), step, values[-1] - step * (len(values) - 1))


def enumeration_lags(a: FinSet, F: Growth) -> list[int]:
    """Indices n with enum(a)(n) < F(n)."""
    return [n for n, e in enumerate(a) if e < F(n)]


@dataclass(frozen=True)
class AvoidDominating(DenseSpec):
    growth: Growth | None = None

    kind = "dominate"

    def apply(self, c, stage, budgets):
        F = self.growth if self.growth is not None else traditional_growth(c, budgets)
        mu: Submeasure = Meet(c.mu, Dom(F))
        folded = admit(c.a, c.A, mu, budgets)
        return folded, {
            "growth": F.describe(),
            "certificate": folded.certificate.payload(),
            "lags": enumeration_lags(c.a, F),
        }

    def describe(self):
        return f"(dominate {self.growth.describe()})" if self.growth is not None else "(dominate)"


# ---- Graph nodes ----

def select_requirement(state):
    requirements = state["requirements"]
    state["requirement"] = requirements[state["stage"] % len(requirements)]
    return state


def apply_requirement(state):
    with tracer.start_as_current_span("apply_requirement") as span:
        s = state["stage"]
        requirement = state["requirement"]
        budgets = state["budgets"]
        old = state["history"][-1]
        span.set_attribute("generic.stage", s)
        span.set_attribute("generic.requirement", requirement.describe())
        started = time.perf_counter()
        try:
            new, body = requirement.apply(old, s, budgets)
        except (InvalidCondition, BudgetExceeded) as e:
            state["aborted"] = f"{requirement.describe()}: {e}"
            span.record_exception(e)
            span.set_status(trace.Status(trace.StatusCode.ERROR))
            return state

        reason = explain_extension(new, old, budgets)
        if reason is not None:
            state["aborted"] = f"{requirement.describe()}: not an extension: {reason}"
            span.set_status(trace.Status(trace.StatusCode.ERROR))
            return state

        record = {
            "stage": s,
            "case": requirement.kind,
            "item": {"requirement": requirement.describe()},
            "condition": new.payload(),
            "decision": body,
            "extension": reason,
        }
        if state["timing"]:
            record["timing_ms"] = round((time.perf_counter() - started) * 1000, 3)
        state["records"].append(record)
        state["outcomes"].append(requirement)
        state["history"].append(new)
        state["stage"] = s + 1
        return state
