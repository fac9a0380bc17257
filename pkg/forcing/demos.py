"""
Worked constructions behind `demo cohesive|dominate|cone`.

cohesive_demo   DecideSet for each set, round-robin with stem growth; reports
                which side each set landed on and whether the stem stopped
                gaining elements on the other side.
dominate_demo   AvoidDominating with the growth function read off the
                condition, then stem growth; reports where the stem's
                enumeration falls below F and that the final measure sits
                below DOM(F) on the probe pool.
cone_demo       cone_run on a small family of Turing tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from opentelemetry import trace

from core.errors import BudgetExceeded
from core.periodic import PeriodicSet
from forcing.budgets import Budgets
from forcing.conditions import probe_pool
from forcing.fusion import ConeReport, cone_run
from forcing.generic import decided_side, generic_build, side_is_stable
from forcing.requirements import (
    AvoidDominating,
    DecideSet,
    MeasureAtLeast,
    enumeration_lags,
    traditional_growth,
)
from names.base import Name
from names.oracle import TuringTable
from state.state import FusionState, GenericState
from submeasure.expressions import Dom

tracer = trace.get_tracer("demo")


@dataclass(frozen=True)
class CohesiveReport:
    entries: tuple[dict, ...]

    @property
    def verified(self) -> bool:
        return all(e["stable"] for e in self.entries)

    def payload(self) -> dict:
        return {"verified": self.verified, "entries": list(self.entries)}


def cohesive_demo(
    sets: list[PeriodicSet], budgets: Budgets | None = None, timing: bool = False
) -> tuple[GenericState, CohesiveReport]:
    budgets = budgets or Budgets()
    requirements = [DecideSet(R) for R in sets] + [MeasureAtLeast()]
    with tracer.start_as_current_span("cohesive_demo") as span:
        span.set_attribute("demo.sets", len(sets))
        state = generic_build(requirements, budgets, timing=timing)
        entries = []
        for R in sets:
            decided = decided_side(state, R)
            entries.append({
                "set": R.describe(),
                "stage": decided[0] if decided else None,
                "side": decided[1] if decided else None,
                "stable": side_is_stable(state, R, budgets.horizon),
            })
        report = CohesiveReport(tuple(entries))
        span.set_attribute("demo.verified", report.verified)
        return state, report


@dataclass(frozen=True)
class DominateReport:
    growth: str
    lags: tuple[int, ...]
    below: bool

    def payload(self) -> dict:
        return {"growth": self.growth, "lags": list(self.lags), "below": self.below}


def dominate_demo(
    budgets: Budgets | None = None, growth=None, timing: bool = False
) -> tuple[GenericState, DominateReport]:
    budgets = budgets or Budgets()
    with tracer.start_as_current_span("dominate_demo") as span:
        state = generic_build([AvoidDominating(growth), MeasureAtLeast()], budgets, timing=timing)
        stage = next((r["stage"] for r in state["records"] if r["case"] == "dominate"), 0)
        F = growth if growth is not None else traditional_growth(state["history"][stage], budgets)
        final = state["history"][-1]
        dom = Dom(F)
        below = True
        for x in probe_pool(budgets):
            try:
                if final.mu.eval(x, budgets.dp) > dom.eval(x, budgets.dp):
                    below = False
                    break
            except BudgetExceeded:
                continue
        lags = tuple(enumeration_lags(final.a, F))
        span.set_attribute("demo.lags", len(lags))
        return state, DominateReport(F.describe(), lags, below)


def toy_functionals() -> list[Name]:
    """Five small Turing tables: an oracle bit, a constant, a shifted bit, a
    parity and a one-sided output."""
    return [
        TuringTable.of([("0", 0, 0), ("1", 0, 1)]),
        TuringTable.of([("", 0, 7), ("", 1, 7)]),
        TuringTable.of([("00", 0, 0), ("10", 0, 0), ("01", 0, 1), ("11", 0, 1)]),
        TuringTable.of([("00", 1, 0), ("11", 1, 0), ("01", 1, 1), ("10", 1, 1)]),
        TuringTable.of([("001", 0, 1), ("011", 0, 1), ("101", 0, 1), ("111", 0, 1)]),
    ]


def cone_demo(
    budgets: Budgets | None = None, functionals: list[Name] | None = None, timing: bool = False
) -> tuple[FusionState, ConeReport]:
    functionals = toy_functionals() if functionals is None else functionals
    return cone_run(functionals, budgets, timing)
