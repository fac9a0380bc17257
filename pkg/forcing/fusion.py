"""
Fusion sequences.

fusion_run drives the stage template through the fusion graph:

    a_0 ⊄ b_s or b_s ⊄ a_s        keep the condition
    (μ_s ∧ λ_s)(A_s) = ∞          μ_{s+1} = μ_s ∧ (λ_s ∨ s)
    (μ_s ∧ λ_s)(A_s) < ∞          the handler shrinks A_s

and then grows the stem until μ_{s+1}(a_{s+1}) ≥ s+1. Every stage is logged with
its certificates and the ≤_s check against the previous condition.

Functions:
    fusion_run(initial, handler, budgets): the final FusionState, or StageAborted.
    cone_run(functionals, budgets): fusion with ConeHandler from (∅, ℕ, CARD),
        plus a per-(e, b) report.
    limit_condition(state): (a_0, a_S ∪ A_S past max a_S, μ_S).
    limit_dominance(state, pool): probes where the limit measure exceeds some μ_s.
    stage_certificates(state): every stem and dichotomy certificate, re-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from opentelemetry import trace

from core.errors import BudgetExceeded, StageAborted
from core.finsets import FinSet
from core.periodic import nat
from core.syntax import parse_set
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit, explain_extension_s, probe_pool
from forcing.handlers import ConeHandler, StageHandler, stabilizes
from graph.fusion_graph import build_fusion_graph, recursion_limit
from names.base import Name
from state.state import FusionState
from submeasure.checks import Witnessed, recheck_witnessed
from submeasure.expressions import Card

tracer = trace.get_tracer("fusion")


def initial_fusion_state(initial: Condition, handler: StageHandler, budgets: Budgets, timing: bool = False) -> FusionState:
    return {
        "handler": handler,
        "budgets": budgets,
        "stage": 0,
        "stages": budgets.stages,
        "history": [initial],
        "item": None,
        "stem": None,
        "lam": None,
        "dichotomy": None,
        "case": None,
        "decision": None,
        "pending": None,
        "started": 0.0,
        "outcomes": [],
        "records": [],
        "aborted": None,
        "timing": timing,
    }


def fusion_run(
    initial: Condition,
    handler: StageHandler,
    budgets: Budgets | None = None,
    timing: bool = False,
) -> FusionState:
    budgets = budgets or Budgets()
    graph = build_fusion_graph()
    with tracer.start_as_current_span("fusion_run") as span:
        span.set_attribute("fusion.handler", handler.name)
        span.set_attribute("fusion.stages", budgets.stages)
        state = initial_fusion_state(initial, handler, budgets, timing)
        if budgets.stages <= 0:
            return state
        final = graph.invoke(state, {"recursion_limit": recursion_limit(budgets.stages)})
        span.set_attribute("fusion.completed", final["stage"])
        if final["aborted"] is not None:
            span.set_status(trace.Status(trace.StatusCode.ERROR))
            raise StageAborted(final["stage"], final["aborted"], final)
        return final


# ---- Limits ----

def limit_condition(state: FusionState) -> Condition:
    """(a_0, a_S ∪ (A_S beyond max a_S), μ_S), certified by a_S itself."""
    first, last = state["history"][0], state["history"][-1]
    start = last.a.max() + 1 if last.a else 0
    envelope = last.A.diff(FinSet.range(start)).union(last.a)
    certificate = Witnessed(state["stage"], last.a)
    return Condition(first.a, envelope, last.mu, certificate)


def limit_dominance(state: FusionState, pool: list[FinSet] | None = None) -> list[tuple[int, FinSet]]:
    """(s, x) for every probe x with μ_S(x) > μ_s(x); empty when the limit lies below each stage."""
    budgets = state["budgets"]
    pool = pool if pool is not None else probe_pool(budgets)
    limit = state["history"][-1].mu
    bad = []
    for s, c in enumerate(state["history"]):
        for x in pool:
            try:
                if limit.eval(x, budgets.dp) > c.mu.eval(x, budgets.dp):
                    bad.append((s, x))
            except BudgetExceeded:
                continue
    return bad


@dataclass(frozen=True)
class StageCertificate:
    stage: int
    kind: str
    ok: bool
    detail: str | None = None

    def payload(self) -> dict:
        return {"stage": self.stage, "kind": self.kind, "ok": self.ok, "detail": self.detail}


def stage_certificates(state: FusionState) -> list[StageCertificate]:
    """Re-check every logged certificate from definitions only."""
    budgets = state["budgets"]
    pool = probe_pool(budgets)
    out = []
    history = state["history"]
    for s in range(1, len(history)):
        old, new = history[s - 1], history[s]
        stem_ok = new.A.contains_finset(new.a) and new.mu.eval(new.a, budgets.dp) >= s
        out.append(StageCertificate(s - 1, "stem", stem_ok))
        out.append(StageCertificate(s - 1, "condition", recheck_witnessed(new.mu, new.A, new.certificate)))
        reason = explain_extension_s(new, old, s - 1, budgets, pool)
        out.append(StageCertificate(s - 1, "extension", reason is None, reason))
    return out


# ---- Cone avoidance ----

@dataclass(frozen=True)
class ConeReport:
    entries: tuple[dict, ...]

    @property
    def verified(self) -> bool:
        return all(e["ok"] for e in self.entries)

    def payload(self) -> dict:
        return {"verified": self.verified, "entries": list(self.entries)}


def _restabilize(state: FusionState, record: dict) -> bool:
    """Re-enumerate STAB(Φ_e, b) over the logged class; the class must also be
    the one the next condition's envelope was built from."""
    s = record["stage"]
    decision = record["decision"] or {}
    if "class" not in decision:
        return False
    before, after = state["history"][s], state["history"][s + 1]
    C = parse_set(decision["class"])
    if C.union(before.a) != after.A:
        return False
    item = state["outcomes"][s]["item"]
    functional = state["handler"].functionals[item.e]
    return stabilizes(functional, item.b, C, state["budgets"].depth)


def cone_report(state: FusionState) -> ConeReport:
    entries = []
    for record in state["records"]:
        if record["case"] == "fold":
            entries.append({"stage": record["stage"], **record["item"], "branch": "fold", "ok": True})
        elif record["case"] == "shrink":
            stabilized = _restabilize(state, record)
            logged = bool(record["decision"] and record["decision"].get("stabilized"))
            entries.append({
                "stage": record["stage"],
                **record["item"],
                "branch": "stabilize",
                "ok": stabilized and logged,
            })
    return ConeReport(tuple(entries))


def cone_run(
    functionals: list[Name] | tuple[Name, ...],
    budgets: Budgets | None = None,
    timing: bool = False,
) -> tuple[FusionState, ConeReport]:
    budgets = budgets or Budgets()
    with tracer.start_as_current_span("cone_run") as span:
        span.set_attribute("fusion.functionals", len(functionals))
        initial = admit(FinSet(), nat(), Card(), budgets)
        state = fusion_run(initial, ConeHandler(functionals), budgets, timing)
        report = cone_report(state)
        span.set_attribute("fusion.verified", report.verified)
        return state, report

