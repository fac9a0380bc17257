"""
Graph nodes of a fusion run.

Each node takes the FusionState, does one step of the stage template and
returns the state. Nodes never raise: a failing search marks the state as
aborted (with the exception recorded on the span) and the graph routes to END.

Functions:
    schedule_stage(state):  stage s's item and stem from the handler.
    stage_dichotomy(state): skip when a_0 ⊄ b_s or b_s ⊄ a_s, otherwise
                            unbounded_check on (μ_s ∧ λ_s)(A_s) at s + s_0.
    fold_measure(state):    μ_{s+1} = μ_s ∧ (λ_s ∨ s), A unchanged.
    shrink_envelope(state): the handler's bounded case.
    skip_stage(state):      condition unchanged.
    grow_stem(state):       a_{s+1} ⊇ a_s inside A_{s+1} with μ_{s+1}(a_{s+1}) ≥ s+1,
                            then checks ≤_s on the probe pool and logs the stage;
                            a failed check aborts the run.
"""

from __future__ import annotations

import time

from opentelemetry import trace

from core.errors import BudgetExceeded, InvalidCondition
from core.finsets import FinSet
from forcing.conditions import Condition, explain_extension_s, probe_pool
from submeasure.checks import Unknown, Witnessed, unbounded_check
from submeasure.expressions import Const, Meet, join

tracer = trace.get_tracer("fusion")


def _fail(state, span, reason: str, error: Exception | None = None):
    state["aborted"] = reason
    if error is not None:
        span.record_exception(error)
    span.set_status(trace.Status(trace.StatusCode.ERROR))
    return state


def schedule_stage(state):
    with tracer.start_as_current_span("schedule") as span:
        handler = state["handler"]
        item = handler.item(state["stage"])
        state["item"] = item
        state["stem"] = handler.stem(item) if item is not None else None
        state["lam"] = None
        state["dichotomy"] = None
        state["case"] = None
        state["decision"] = None
        state["pending"] = None
        if state["timing"]:
            state["started"] = time.perf_counter()
        span.set_attribute("fusion.stage", state["stage"])
        return state


def stage_dichotomy(state):
    with tracer.start_as_current_span("dichotomy") as span:
        s = state["stage"]
        c = state["history"][-1]
        a0 = state["history"][0].a
        b = state["stem"]
        if state["item"] is None or (b is not None and not (a0.issubset(b) and b.issubset(c.a))):
            state["case"] = "skip"
            span.set_attribute("fusion.case", "skip")
            return state

        budgets = state["budgets"]
        try:
            lam = state["handler"].submeasure(state["item"], c, budgets)
            verdict = unbounded_check(Meet(c.mu, lam), c.A, s + budgets.threshold, budgets.horizon, budgets.dp)
        except Exception as e:
            return _fail(state, span, f"dichotomy failed: {e}", e)

        state["lam"] = lam
        state["dichotomy"] = verdict
        span.set_attribute("fusion.dichotomy", verdict.kind)
        if isinstance(verdict, Unknown):
            return _fail(state, span, f"dichotomy unknown within budget {verdict.budget}")
        state["case"] = "fold" if isinstance(verdict, Witnessed) else "shrink"
        span.set_attribute("fusion.case", state["case"])
        return state


def fold_measure(state):
    with tracer.start_as_current_span("fold"):
        c = state["history"][-1]
        mu = Meet(c.mu, join(state["lam"], Const(state["stage"])))
        # the dichotomy's witness for μ ∧ λ also witnesses μ ∧ (λ ∨ s)
        state["pending"] = Condition(c.a, c.A, mu, state["dichotomy"])
        return state


def shrink_envelope(state):
    with tracer.start_as_current_span("shrink") as span:
        c = state["history"][-1]
        try:
            shrunk, decision = state["handler"].shrink(state["item"], c, state["budgets"])
        except (InvalidCondition, BudgetExceeded) as e:
            return _fail(state, span, f"bounded case: {e}", e)
        state["pending"] = shrunk
        state["decision"] = decision
        return state


def skip_stage(state):
    state["pending"] = state["history"][-1]
    return state


def grow_to(c: Condition, target: int, horizon: int, budget: int) -> tuple[FinSet, int]:
    a = c.a
    value = c.mu.eval(a, budget)
    start = a.max() + 1 if a else 0
    for count, e in enumerate(c.A.elements(start)):
        if value >= target or count >= horizon:
            break
        a = a.add(e)
        value = c.mu.eval(a, budget)
    return a, value


def grow_stem(state):
    with tracer.start_as_current_span("grow_stem") as span:
        s = state["stage"]
        budgets = state["budgets"]
        old = state["history"][-1]
        c = state["pending"]
        try:
            a, value = grow_to(c, s + 1, budgets.horizon, budgets.dp)
        except BudgetExceeded as e:
            return _fail(state, span, f"stem growth: {e}", e)
        if value < s + 1:
            return _fail(state, span, f"no stem of measure {s + 1} within {budgets.horizon} elements")

        grown = Condition(a, c.A, c.mu, c.certificate)
        reason = explain_extension_s(grown, old, s, budgets, probe_pool(budgets))
        span.set_attribute("fusion.stem", str(a))
        span.set_attribute("fusion.extension_ok", reason is None)
        if reason is not None:
            return _fail(state, span, f"not a ≤_{s} extension: {reason}")

        record = {
            "stage": s,
            "case": state["case"],
            "item": state["handler"].describe_item(state["item"]),
            "condition": grown.payload(),
            "dichotomy": state["dichotomy"].payload() if state["dichotomy"] is not None else None,
            "decision": state["decision"],
            "stem_certificate": Witnessed(s + 1, a).payload(),
            "extension": reason,
        }
        if state["timing"]:
            record["timing_ms"] = round((time.perf_counter() - state["started"]) * 1000, 3)

        state["records"].append(record)
        state["outcomes"].append({"lam": state["lam"], "dichotomy": state["dichotomy"], "item": state["item"]})
        state["history"].append(grown)
        state["stage"] = s + 1
        return state


def is_finished(state) -> bool:
    return state["aborted"] is not None or state["stage"] >= state["stages"]

