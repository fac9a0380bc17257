import copy
from dataclasses import replace

import pytest

from core.errors import InvalidCondition, StageAborted
from core.finsets import FinSet
from core.periodic import nat
from core.syntax import parse_set
from forcing import (
    ConstantHandler,
    StarFusionHandler,
    admit,
    cone_demo,
    fusion_run,
    limit_condition,
    limit_dominance,
    stage_certificates,
    verify_event,
    verify_run,
)
from forcing.fusion import cone_report
from formula import parse_family
from submeasure import Card
from submeasure.expressions import Const


class RefusingHandler(ConstantHandler):
    name = "refusing"

    def shrink(self, item, c, budgets):
        raise InvalidCondition("no envelope")


class InflatingHandler(ConstantHandler):
    name = "inflating"

    def shrink(self, item, c, budgets):
        return admit(c.a, c.A, Const(100), budgets), {"envelope": "unchanged"}


@pytest.fixture
def top(small):
    return admit(FinSet(), nat(), Card(), small)


def test_constant_handler_always_shrinks(small, top):
    state = fusion_run(top, ConstantHandler(), small)
    assert state["stage"] == small.stages
    assert [r["case"] for r in state["records"]] == ["shrink"] * small.stages
    assert all(r["decision"] == {"envelope": "unchanged"} for r in state["records"])
    assert all(r["extension"] is None for r in state["records"])
    assert state["history"][-1].a == FinSet.range(small.stages)


def test_stems_grow_by_one_measure_per_stage(small, top):
    state = fusion_run(top, ConstantHandler(), small)
    for s, c in enumerate(state["history"]):
        assert c.mu.eval(c.a) >= s
    assert [r["stem_certificate"]["s"] for r in state["records"]] == [1, 2, 3, 4]


def test_stage_certificates_recheck(small, top):
    state = fusion_run(top, ConstantHandler(), small)
    checks = stage_certificates(state)
    assert len(checks) == 3 * small.stages
    assert {c.kind for c in checks} == {"stem", "condition", "extension"}
    assert all(c.ok for c in checks)


def test_limit_of_a_constant_run(small, top):
    state = fusion_run(top, ConstantHandler(), small)
    limit = limit_condition(state)
    assert limit.a == FinSet()
    assert limit.A == nat()
    assert limit.certificate.s == small.stages
    assert limit_dominance(state) == []


def test_timing_is_recorded_when_asked(small, top):
    state = fusion_run(top, ConstantHandler(), small, timing=True)
    assert all("timing_ms" in r for r in state["records"])
    untimed = fusion_run(top, ConstantHandler(), small)
    assert all("timing_ms" not in r for r in untimed["records"])


def test_zero_stages_returns_the_initial_state(small, top):
    state = fusion_run(top, ConstantHandler(), replace(small, stages=0))
    assert state["history"] == [top]
    assert state["records"] == []


def test_a_failing_shrink_aborts_the_run(small, top, spans):
    with pytest.raises(StageAborted) as e:
        fusion_run(top, RefusingHandler(), small)
    assert e.value.stage == 0
    assert "no envelope" in e.value.reason
    assert e.value.state["records"] == []
    run = [s for s in spans.get_finished_spans() if s.name == "fusion_run"][-1]
    assert run.attributes["fusion.handler"] == "refusing"
    assert not run.status.is_ok


def test_star_fusion_forces_a_true_family(small, top):
    phi, _ = parse_family("(forall u (atom w 0))")
    state = fusion_run(top, StarFusionHandler(phi, 0), small)
    first = state["records"][0]
    assert first["case"] == "shrink"
    assert first["item"] == {"b": [], "x": []}
    assert first["decision"]["y"] == 0
    assert first["decision"]["forced"]["kind"] == "forced"
    assert {r["case"] for r in state["records"]} <= {"shrink", "skip"}
    assert all(c.ok for c in verify_run(state))


def test_cone_demo(small):
    state, report = cone_demo(small)
    assert [r["case"] for r in state["records"]] == ["shrink", "shrink", "shrink", "skip"]
    assert [r["item"]["e"] for r in state["records"]] == [0, 1, 0, 0]
    for record in state["records"][:3]:
        assert record["decision"]["sigma"] == "0111"
        assert record["decision"]["stabilized"] is True
        assert parse_set(record["decision"]["class"]) == nat().diff(FinSet.of([0]))
    assert report.verified
    assert len(report.entries) == 3
    assert report.payload()["verified"] is True
    assert state["history"][-1].a == FinSet.of([1, 2, 3, 4])


def test_cone_run_verifies(small):
    state, _ = cone_demo(small)
    checks = verify_run(state)
    assert {c.kind for c in checks} >= {"condition", "stem", "stabilization"}
    assert all(c.ok for c in checks)


def test_tampered_certificates_fail_verification(small):
    state, _ = cone_demo(small)
    record = copy.deepcopy(state["records"][0])
    record["condition"]["certificate"]["s"] = 99
    checks = verify_event(record, state)
    assert not next(c for c in checks if c.kind == "condition").ok
    record = copy.deepcopy(state["records"][0])
    record["stem_certificate"]["b"] = [7]
    assert not next(c for c in verify_event(record, state) if c.kind == "stem").ok


def test_a_measure_that_grows_aborts_the_stage(small, top, spans):
    with pytest.raises(StageAborted) as e:
        fusion_run(top, InflatingHandler(), small)
    assert e.value.stage == 0
    assert "not a ≤_0 extension" in e.value.reason
    assert "measure grows" in e.value.reason
    assert e.value.state["records"] == []
    grown = [s for s in spans.get_finished_spans() if s.name == "grow_stem"][-1]
    assert grown.attributes["fusion.extension_ok"] is False
    assert not grown.status.is_ok


def test_cone_starts_from_the_counting_measure(small):
    state, _ = cone_demo(small)
    start = state["history"][0]
    assert start.a == FinSet()
    assert start.A == nat()
    assert start.mu.key == Card().key
    assert start.mu.eval(FinSet.of([0, 5])) == 2


def test_cone_report_recomputes_stabilization(small):
    state, report = cone_demo(small)
    assert report.verified

    flipped = copy.copy(state)
    flipped["records"] = copy.deepcopy(state["records"])
    flipped["records"][0]["decision"]["stabilized"] = False
    assert not cone_report(flipped).entries[0]["ok"]

    widened = copy.copy(state)
    widened["records"] = copy.deepcopy(state["records"])
    widened["records"][0]["decision"]["class"] = nat().describe()
    entries = cone_report(widened).entries
    assert not entries[0]["ok"]
    assert all(e["ok"] for e in entries[1:])
