from dataclasses import replace

import pytest

from core.errors import NotFoundUpTo
from core.finsets import FinSet
from core.periodic import fin, nat
from forcing import (
    DomainKilled,
    ForcedUpTo,
    Localized,
    Refuted,
    admit,
    approx_forces,
    approx_from_witness,
    least_sigma2_index,
    localize,
    pi2_decide,
)
from forcing.approx import lambda_submeasure
from forcing.families import candidate_envelopes, instance
from forcing.locality import locality_submeasure
from forcing.pi1 import pi1_forces
from formula import parse_family
from names import EmptyName, GenericChi, const_name
from submeasure import BoundedSoFar, Card, Mazur, Subsets, Witnessed

NEVER = "(forall u (atom w (app (canon (+ x 1)) (w))))"
ONLY_ZERO = "(forall u (atom w 0))"
CHI = "(atom (app (chi) (w)) 1)"
INSIDE_S = (
    "(forall u (and (atom w 0) (implies (atom (app (chi) (u)) 1) "
    "(atom (app (canon (tab (table 0 0 1 0 2 0 3 0 4 1 5 0) (affine 0 1) u)) (u)) 1))))"
)


def family(text):
    return parse_family(text)[0]


@pytest.fixture
def top(small):
    return admit(FinSet(), nat(), Card(), small)


def test_pi2_forall_not_branch(small, top):
    report = pi2_decide(top, family(NEVER), small)
    assert report.branch == "forall-not"
    assert report.dichotomy == Witnessed(5, FinSet.range(5))
    assert len(report.sweep) == small.bound
    assert all(isinstance(r, Refuted) for r in report.sweep)
    assert report.condition.a == FinSet()
    assert report.payload()["branch"] == "forall-not"


def test_pi2_exists_branch(small, top):
    budgets = replace(small, horizon=6)
    report = pi2_decide(top, family(ONLY_ZERO), budgets)
    assert report.branch == "exists"
    assert report.dichotomy == BoundedSoFar(6, 1)
    assert report.y == 0
    assert report.condition.a == FinSet()
    assert isinstance(report.verdict, ForcedUpTo)
    assert isinstance(pi1_forces(report.condition, instance(family(ONLY_ZERO), 0), budgets), ForcedUpTo)


def test_pi2_exists_branch_from_the_split_pieces(small, spans):
    budgets = replace(small, bound=4)
    c = admit(FinSet(), nat(), Mazur((Subsets(fin([0, 1, 2, 3, 5])),)), budgets)
    phi = family(INSIDE_S)
    report = pi2_decide(c, phi, budgets)
    assert report.branch == "exists"
    assert report.dichotomy == BoundedSoFar(8, 2)
    assert report.y == 0
    piece = nat().diff(FinSet.range(8)).union(FinSet.of([4, 6, 7]))
    assert report.condition.a == FinSet()
    assert report.condition.A == piece
    assert piece not in set(candidate_envelopes(nat(), FinSet(), budgets.window))
    assert isinstance(pi1_forces(report.condition, instance(phi, 0), budgets), ForcedUpTo)
    found = [s for s in spans.get_finished_spans() if s.name == "pi2_exists"][-1]
    assert found.attributes["forcing.source"] == "split"
    assert found.attributes["forcing.pieces"] == 1


def test_pi2_records_the_branch(small, top, spans):
    pi2_decide(top, family(NEVER), small)
    span = [s for s in spans.get_finished_spans() if s.name == "pi2_decide"][-1]
    assert span.attributes["forcing.branch"] == "forall-not"
    assert span.attributes["forcing.window"] == 4


def test_approx_forces_finds_the_stem_value(small):
    c = admit(FinSet.of([1]), nat(), Card(), small)
    found = approx_forces(c, family(CHI), small)
    assert found.y == 1
    assert found.removed == FinSet()
    assert found.condition.a == FinSet.of([1])
    assert found.payload()["y"] == 1


def test_approx_forces_gives_up(small, top):
    with pytest.raises(NotFoundUpTo) as e:
        approx_forces(top, family("(forall u (atom w 5))"), small)
    assert e.value.budgets["bound"] == small.bound


def test_approx_from_a_witness_name(small):
    c = admit(FinSet.of([2]), nat(), Card(), small)
    found = approx_from_witness(c, family(CHI), const_name(2), small)
    assert found.y == 2
    assert isinstance(found.verdict, ForcedUpTo)
    with pytest.raises(ValueError):
        approx_from_witness(c, family(CHI), GenericChi(), small)


def test_lambda_submeasure_is_small_on_witnessed_values():
    phi = family("(forall z (atom u (app (canon (+ x 2)) (v))))")
    witnessed = lambda_submeasure(FinSet(), (2,), phi, 2)
    missing = lambda_submeasure(FinSet(), (0,), phi, 2)
    x = FinSet.of([0, 1, 2])
    assert witnessed.eval(x) == 1
    assert missing.eval(x) == 3


@pytest.mark.slow
def test_least_sigma2_index(small):
    budgets = replace(small, horizon=6)
    c = admit(FinSet(), nat(), Card(), budgets)
    phi = family("(forall z (atom u (app (canon (+ x 2)) (v))))")
    report = least_sigma2_index(c, phi, 3, budgets)
    assert report.least == 2
    assert [x for x, _ in report.chain] == [0, 1, 2]
    assert [v.kind for _, v in report.chain] == ["witnessed", "witnessed", "bounded"]


def test_localize_total_name(small, top):
    verdict = localize(top, GenericChi(), small)
    assert isinstance(verdict, Localized)
    assert verdict.condition.certificate.s == small.threshold


def test_localize_nowhere_defined_name(small, top):
    verdict = localize(top, EmptyName(1), small)
    assert isinstance(verdict, DomainKilled)
    assert verdict.args == (0,)
    assert verdict.condition.a == FinSet()


def test_locality_trees_cover_where_nothing_converges():
    mu = locality_submeasure(EmptyName(1), FinSet(), 2)
    assert mu.eval(FinSet.of([0, 5])) == 1
    assert locality_submeasure(GenericChi(), FinSet(), 1).eval(FinSet.of([0, 5])) == 6
