from dataclasses import replace

import pytest

from core.errors import StageAborted
from core.finsets import BitString, FinSet
from core.pairing import pair
from core.periodic import fin, nat, prog
from forcing import (
    DecideSet,
    MeasureAtLeast,
    Pi2,
    admit,
    cohesive_demo,
    decided_side,
    dominate_demo,
    generic_build,
    pi3_witness,
    side_is_stable,
    verify_run,
)
from forcing.pi3 import Sigma2Name, pi3_matrix
from forcing.requirements import DenseSpec, enumeration_lags, traditional_growth
from formula import parse_family, parse_formula
from submeasure import Card
from submeasure.expressions import Const
from submeasure.trees import Growth

NEVER = "(forall u (atom w (app (canon (+ x 1)) (w))))"


class Inflate(DenseSpec):
    kind = "inflate"

    def apply(self, c, stage, budgets):
        return admit(c.a, c.A, Const(100), budgets), {}

    def describe(self):
        return "(inflate)"


def test_deciding_the_evens(small):
    R = prog(0, 2)
    state = generic_build([DecideSet(R), MeasureAtLeast()], small)
    assert [r["case"] for r in state["records"]] == ["decide", "measure", "decide", "measure"]
    assert decided_side(state, R) == (2, "inside")
    assert side_is_stable(state, R, small.horizon)
    assert state["history"][-1].a == FinSet.of([0, 2, 4, 6])
    assert all(c.ok for c in verify_run(state))


def test_stems_and_envelopes_are_nested(small):
    state = generic_build([DecideSet(prog(0, 2)), MeasureAtLeast()], small)
    history = state["history"]
    for older, newer in zip(history, history[1:]):
        assert older.a.issubset(newer.a)
        assert newer.A.contains_finset(newer.a)
        assert newer.A.restrict(64).issubset(older.A.restrict(64))


def test_a_finite_set_is_decided_outside(small):
    R = fin([0, 1, 2])
    state = generic_build([DecideSet(R)], replace(small, stages=1))
    assert decided_side(state, R) == (0, "outside")
    assert state["history"][-1].A == nat().diff(FinSet.of([0, 1, 2]))


def test_undecided_set_is_not_stable(small):
    state = generic_build([MeasureAtLeast()], replace(small, stages=2))
    assert decided_side(state, prog(0, 2)) is None
    assert not side_is_stable(state, prog(0, 2), small.horizon)


def test_an_impossible_requirement_aborts(small, spans):
    with pytest.raises(StageAborted) as e:
        generic_build([MeasureAtLeast(100)], small)
    assert e.value.stage == 0
    assert "(measure 100)" in e.value.reason
    applied = [s for s in spans.get_finished_spans() if s.name == "apply_requirement"][-1]
    assert not applied.status.is_ok


def test_a_requirement_that_is_not_an_extension_aborts(small, spans):
    with pytest.raises(StageAborted) as e:
        generic_build([Inflate()], small)
    assert e.value.stage == 0
    assert "not an extension" in e.value.reason
    assert "measure grows" in e.value.reason
    applied = [s for s in spans.get_finished_spans() if s.name == "apply_requirement"][-1]
    assert not applied.status.is_ok


def test_no_requirements_keeps_the_initial_condition(small):
    state = generic_build([], small)
    assert len(state["history"]) == 1
    assert state["records"] == []


def test_pi2_requirement(small):
    phi, _ = parse_family(NEVER)
    state = generic_build([Pi2(phi)], replace(small, stages=1))
    record = state["records"][0]
    assert record["case"] == "pi2"
    assert record["decision"]["branch"] == "forall-not"
    checks = verify_run(state)
    assert [c.kind for c in checks].count("refuted") == small.bound
    assert all(c.ok for c in checks)


def test_traditional_growth_of_the_counting_measure(small):
    budgets = replace(small, window=5, horizon=20)
    F = traditional_growth(admit(FinSet(), nat(), Card(), budgets), budgets)
    assert F.values == (0, 1, 3, 6, 10)
    assert F.slope == 4
    assert F(5) == 14


def test_enumeration_lags():
    F = Growth((0, 1, 3), 2, -1)
    assert enumeration_lags(FinSet.of([0, 1, 2]), F) == [2]
    assert enumeration_lags(FinSet.of([0, 2, 4, 6]), F) == []


@pytest.mark.slow
def test_dominate_demo(small):
    budgets = replace(small, window=5, horizon=20, dp=12, stages=2)
    state, report = dominate_demo(budgets)
    assert [r["case"] for r in state["records"]] == ["dominate", "measure"]
    assert report.growth == Growth((0, 1, 3, 6, 10), 4, -6).describe()
    assert report.lags == (2,)
    assert report.below
    assert state["history"][-1].a == FinSet.of([0, 1, 2])


def test_cohesive_demo(small):
    budgets = replace(small, horizon=20)
    state, report = cohesive_demo([prog(0, 2), prog(0, 3)], budgets)
    assert report.verified
    sides = {e["set"]: e["side"] for e in report.entries}
    assert sides == {prog(0, 2).describe(): "inside", prog(0, 3).describe(): "inside"}
    assert state["history"][-1].A == prog(0, 6)
    assert report.payload()["verified"] is True


def test_pi3_witness_reads_the_least_forced_value(small):
    theta = parse_formula("(forall w (exists y (forall u (atom y w))))")
    W = pi3_witness(FinSet(), nat(), theta, small)
    assert W.arity == 1
    assert W.query(BitString("0000"), (pair(2, 0),)) == 2
    assert W.query(BitString(""), (pair(2, 0),)) is None


def test_pi3_witness_is_monotone(small):
    theta = parse_formula("(forall w (exists y (forall u (atom y w))))")
    W = pi3_witness(FinSet(), nat(), theta, small)
    t = pair(1, 0)
    assert W.query(BitString("01"), (t,)) == 1
    assert W.query(BitString("0110"), (t,)) == 1


def test_pi3_shape_is_checked():
    with pytest.raises(ValueError):
        pi3_matrix(parse_formula("(forall x (atom x 0))"))
    with pytest.raises(ValueError):
        pi3_matrix(parse_formula("(forall w (exists y (exists u (atom y w))))"))


def test_sigma2_names_are_addressed_by_their_formula():
    always = pi3_matrix(parse_formula("(forall w (exists y (forall u (atom y y))))"))
    five = pi3_matrix(parse_formula("(forall w (exists y (forall u (atom y 5))))"))
    left = Sigma2Name(FinSet(), nat(), always, 1, 4, 3)
    right = replace(left, psi=five)
    assert left.describe() != right.describe()
    assert left.describe() != replace(left, bound=5).describe()
    assert left.query(BitString(""), (0,)) == 0
    assert right.query(BitString(""), (0,)) is None


def test_equal_sigma2_names_share_answers():
    psi = pi3_matrix(parse_formula("(forall w (exists y (forall u (atom y w))))"))
    first = Sigma2Name(FinSet(), nat(), psi, 1, 4, 3)
    second = Sigma2Name(FinSet(), nat(), psi, 1, 4, 3)
    assert first == second
    assert hash(first) == hash(second)
    assert first.key == second.key
    assert first.query(BitString("0000"), (2,)) == second.query(BitString("0000"), (2,)) == 2
