"""
Finite-stage generics.

generic_build meets a list of dense requirements round-robin, starting from
(∅, ℕ, CARD) unless told otherwise. The committed stem G_s = a_s only grows and
the envelopes only shrink, so a_s ⊆ a_{s+1} ⊆ A_{s+1} ⊆ A_s along the log.

Functions:
    generic_build(requirements, budgets, initial): GenericState, or StageAborted.
    decided_side(state, R): the side of R the last DecideSet(R) chose, with the stage.
    side_is_stable(state, R, horizon): G_S ∖ R (or G_S ∩ R) below the horizon
        stopped growing at the deciding stage.
"""

from __future__ import annotations

from opentelemetry import trace

from core.errors import StageAborted
from core.finsets import FinSet
from core.periodic import PeriodicSet, nat
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit
from forcing.requirements import DenseSpec
from graph.generic_graph import build_generic_graph, recursion_limit
from state.state import GenericState
from submeasure.expressions import Card

tracer = trace.get_tracer("generic")


def initial_generic_state(
    requirements: list[DenseSpec], initial: Condition, budgets: Budgets, timing: bool = False
) -> GenericState:
    return {
        "requirements": list(requirements),
        "budgets": budgets,
        "stage": 0,
        "stages": budgets.stages,
        "history": [initial],
        "requirement": None,
        "outcomes": [],
        "records": [],
        "aborted": None,
        "timing": timing,
    }


def generic_build(
    requirements: list[DenseSpec],
    budgets: Budgets | None = None,
    initial: Condition | None = None,
    timing: bool = False,
) -> GenericState:
    budgets = budgets or Budgets()
    initial = initial or admit(FinSet(), nat(), Card(), budgets)
    with tracer.start_as_current_span("generic_build") as span:
        span.set_attribute("generic.requirements", len(requirements))
        state = initial_generic_state(requirements, initial, budgets, timing)
        if not requirements or budgets.stages <= 0:
            return state
        final = build_generic_graph().invoke(state, {"recursion_limit": recursion_limit(budgets.stages)})
        span.set_attribute("generic.completed", final["stage"])
        if final["aborted"] is not None:
            span.set_status(trace.Status(trace.StatusCode.ERROR))
            raise StageAborted(final["stage"], final["aborted"], final)
        return final


def decided_side(state: GenericState, R: PeriodicSet) -> tuple[int, str] | None:
    found = None
    for record in state["records"]:
        if record["case"] == "decide" and record["decision"]["set"] == R.describe():
            found = (record["stage"], record["decision"]["side"])
    return found


def side_is_stable(state: GenericState, R: PeriodicSet, horizon: int) -> bool:
    """After the first decision on R, the stem only gains elements on the chosen side."""
    first = next(
        (r for r in state["records"] if r["case"] == "decide" and r["decision"]["set"] == R.describe()),
        None,
    )
    if first is None:
        return False
    stage, side = first["stage"], first["decision"]["side"]
    at_decision = state["history"][stage + 1].a.below(horizon)
    final = state["history"][-1].a.below(horizon)
    other = FinSet(tuple(e for e in final if (e in R) != (side == "inside")))
    before = FinSet(tuple(e for e in at_decision if (e in R) != (side == "inside")))
    return other == before
