"""
Definition-level re-checks of logged certificates.

Nothing here trusts the search that produced a record. Each certificate kind
is recomputed from the conditions in the run history:

    witnessed       b ⊆ A and μ(b) ≥ s
    refuted         τ ∈ tree(a, A) and the compiled matrix converges to the
                    logged nonzero value on τ at the logged arguments
    stabilization   every two strings of tree(b, C ∪ b) up to the depth give
                    equal outputs wherever both converge
    decide          the envelope, outside the stem, lies on the logged side of R

Records are matched to the history by their stage: record s describes the
move from history[s] to history[s + 1].
"""

from __future__ import annotations

from typing import Any

from opentelemetry import trace

from core.errors import BudgetExceeded
from core.finsets import BitString, FinSet
from core.periodic import PeriodicSet
from core.syntax import parse_set
from forcing.conditions import Condition
from forcing.families import fix_parameters, instance
from forcing.fusion import StageCertificate
from forcing.handlers import stabilizes
from forcing.pi1 import Refuted, counterexample, pi1_matrix, recheck_refuted
from forcing.requirements import DecideSet, Pi2
from submeasure.expressions import Meet, Submeasure

tracer = trace.get_tracer("verify")


def verify_witnessed(mu: Submeasure, A: PeriodicSet, payload: dict, budget: int | None = None) -> bool:
    b = FinSet.of(payload["b"])
    if not A.contains_finset(b):
        return False
    try:
        return mu.eval(b, budget) >= payload["s"]
    except BudgetExceeded:
        return False


def verify_refuted(c: Condition, sentence, payload: dict) -> bool:
    verdict = Refuted(BitString(payload["tau"]), tuple(payload["args"]), payload["value"])
    return recheck_refuted(c, sentence, verdict)


def verify_forced(a: FinSet, A: PeriodicSet, sentence, payload: dict) -> bool:
    n, T = pi1_matrix(sentence)
    return counterexample(a, A, T, n, payload["depth"], payload["bound"]) is None


def verify_decision(c: Condition, R: PeriodicSet, side: str, horizon: int) -> bool:
    inside = side == "inside"
    return all((e in R) == inside for e in c.A.restrict(horizon) if e not in c.a)


def _subject(state: dict, stage: int) -> Any:
    """The requirement (generic runs) or the handler (fusion runs) behind a record."""
    if "requirements" in state:
        return state["outcomes"][stage]
    return state["handler"]


def verify_event(record: dict, state: dict) -> list[StageCertificate]:
    s = record["stage"]
    budgets = state["budgets"]
    before, after = state["history"][s], state["history"][s + 1]
    checks = [
        StageCertificate(
            s, "condition", verify_witnessed(after.mu, after.A, record["condition"]["certificate"], budgets.dp)
        )
    ]

    stem = record.get("stem_certificate")
    if stem is not None:
        ok = FinSet.of(stem["b"]) == after.a and verify_witnessed(after.mu, after.A, stem, budgets.dp)
        checks.append(StageCertificate(s, "stem", ok))

    case = record["case"]
    decision = record.get("decision") or {}
    subject = _subject(state, s)

    if case == "fold":
        lam = state["outcomes"][s]["lam"]
        ok = verify_witnessed(Meet(before.mu, lam), before.A, record["dichotomy"], budgets.dp)
        checks.append(StageCertificate(s, "dichotomy", ok))
    elif case == "shrink" and "sigma" in decision:
        item = state["outcomes"][s]["item"]
        C = parse_set(decision["class"])
        ok = stabilizes(subject.functionals[item.e], item.b, C, budgets.depth)
        checks.append(StageCertificate(s, "stabilization", ok, decision["sigma"]))
    elif case == "shrink" and "forced" in decision:
        item = state["outcomes"][s]["item"]
        sentence = instance(fix_parameters(subject.phi, item.xs), decision["y"])
        ok = verify_forced(item.b, parse_set(decision["envelope"]), sentence, decision["forced"])
        checks.append(StageCertificate(s, "forced", ok, f"y={decision['y']}"))
    elif case == "decide" and isinstance(subject, DecideSet):
        ok = verify_decision(after, subject.R, decision["side"], budgets.horizon)
        checks.append(StageCertificate(s, "decide", ok, decision["side"]))
    elif case == "pi2" and isinstance(subject, Pi2):
        if decision["branch"] == "forall-not":
            for w, refuted in enumerate(decision.get("sweep", [])):
                ok = verify_refuted(after, instance(subject.phi, w), refuted)
                checks.append(StageCertificate(s, "refuted", ok, f"w={w}"))
        elif decision["branch"] == "exists":
            ok = verify_forced(after.a, after.A, instance(subject.phi, decision["y"]), decision["verdict"])
            checks.append(StageCertificate(s, "forced", ok, f"y={decision['y']}"))
    return checks


def verify_run(state: dict) -> list[StageCertificate]:
    with tracer.start_as_current_span("verify_run") as span:
        checks = [check for record in state["records"] for check in verify_event(record, state)]
        failed = [c for c in checks if not c.ok]
        span.set_attribute("verify.checks", len(checks))
        span.set_attribute("verify.failed", len(failed))
        if failed:
            span.set_status(trace.Status(trace.StatusCode.ERROR))
        return checks
