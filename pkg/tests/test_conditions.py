import pytest

from core.errors import InvalidCondition
from core.finsets import BitString, FinSet
from core.periodic import fin, nat, prog
from forcing import Condition, ForcedUpTo, Refuted, admit, extends, extends_s, probe_pool
from forcing.conditions import explain_extension, with_certificate
from forcing.families import candidate_envelopes, fix_parameters, instance, stem_window
from forcing.pi1 import forces_skolem, pi1_forces, recheck_refuted, refutes_herbrand
from formula import classical_eval, parse_family, parse_formula
from names.syntax import parse_name
from submeasure import Card, Const, Witnessed
from submeasure.expressions import sup_measure

NO_PAIRS = "(forall x (not (and (atom (app (chi) (x)) 1) (atom (app (chi) ((app (canon (+ x 1)) (x)))) 1))))"
NO_ONES = "(forall x (atom (app (chi) (x)) 0))"


def test_admission_attaches_a_certificate(small, spans):
    c = admit(FinSet(), nat(), Card(), small)
    assert isinstance(c, Condition)
    assert c.certificate == Witnessed(3, FinSet.of([0, 1, 2]))
    assert c.payload()["certificate"] == {"kind": "witnessed", "s": 3, "b": [0, 1, 2]}
    span = [s for s in spans.get_finished_spans() if s.name == "admit"][-1]
    assert span.attributes["forcing.admission"] == "witnessed"


@pytest.mark.parametrize(
    "a, A, mu",
    [
        (FinSet.of([1]), prog(0, 2), Card()),
        (FinSet(), fin([0, 1, 2, 3]), Card()),
        (FinSet(), nat(), Const(2)),
    ],
)
def test_admission_refusals(small, a, A, mu):
    with pytest.raises(InvalidCondition):
        admit(a, A, mu, small)


def test_with_certificate_rechecks_the_witness():
    good = Witnessed(2, FinSet.of([0, 2]))
    c = with_certificate(FinSet(), prog(0, 2), Card(), good)
    assert c.certificate == good
    with pytest.raises(InvalidCondition):
        with_certificate(FinSet(), prog(0, 2), Card(), Witnessed(3, FinSet.of([0, 2])))
    with pytest.raises(InvalidCondition):
        with_certificate(FinSet(), prog(0, 2), Card(), Witnessed(1, FinSet.of([1])))


def test_condition_tree():
    c = admit(FinSet.of([0]), prog(0, 2), Card())
    assert [t.bits for t in c.tree(4)] == ["1000", "1010"]
    assert c.tree_member(BitString("10"))
    assert c.describe() == '(cond (fin 0) (periodic "" "10") (card))'


def test_extension_on_sets(small):
    top = admit(FinSet(), nat(), Card(), small)
    evens = admit(FinSet.of([0]), prog(0, 2), Card(), small)
    odds = admit(FinSet.of([1]), prog(1, 2), Card(), small)
    assert extends(evens, top, small)
    assert extends(odds, top, small)
    assert not extends(odds, evens, small)
    assert not extends(top, evens, small)
    assert "does not contain" in explain_extension(odds, evens, small)


def test_extension_on_measures(small):
    card = admit(FinSet(), nat(), Card(), small)
    sup = admit(FinSet(), nat(), sup_measure(), small)
    assert extends(card, sup, small)
    assert not extends(sup, card, small)
    assert explain_extension(sup, card, small).startswith("measure grows")


def test_s_extension(small):
    stem = admit(FinSet.of([0]), nat(), Card(), small)
    sup = admit(FinSet(), nat(), sup_measure(), small)
    assert extends_s(stem, sup, 1, small)
    assert not extends_s(stem, sup, 2, small)


def test_comparison_sets_are_seeded(small):
    pool = probe_pool(small)
    assert len(pool) == 2 ** small.window + small.probes
    assert pool == probe_pool(small)
    assert pool[0] == FinSet()


def test_pi1_forcing_of_a_bounded_sentence(small):
    c = admit(FinSet.of([0]), nat(), Card(), small)
    assert pi1_forces(c, parse_formula("(atom (app (chi) (0)) 1)"), small) == ForcedUpTo(4, 3)
    verdict = pi1_forces(c, parse_formula("(atom (app (chi) (1)) 1)"), small)
    assert verdict == Refuted(BitString("1000"), (), 1)
    assert recheck_refuted(c, parse_formula("(atom (app (chi) (1)) 1)"), verdict)


def test_pi1_forcing_with_free_variables(small):
    phi, _ = parse_family("(atom (app (chi) (w)) 1)")
    c = admit(FinSet.of([0]), nat(), Card(), small)
    assert isinstance(pi1_forces(c, phi, small, env=(0,)), ForcedUpTo)
    assert isinstance(pi1_forces(c, phi, small, env=(2,)), Refuted)


@pytest.mark.parametrize(
    "a, A",
    [(FinSet(), prog(0, 2)), (FinSet(), nat()), (FinSet.of([0]), prog(0, 2)), (FinSet.of([1]), nat())],
)
def test_pi1_forcing_matches_the_tree(small, a, A):
    phi = parse_formula(NO_PAIRS)
    c = admit(a, A, Card(), small)
    verdict = pi1_forces(c, phi, small)
    refuted_somewhere = any(
        classical_eval(phi, tau, bound=small.bound, depth=small.depth) is False for tau in c.tree(small.depth)
    )
    assert isinstance(verdict, Refuted) == refuted_somewhere
    if isinstance(verdict, Refuted):
        assert recheck_refuted(c, phi, verdict)


def test_forces_skolem_on_an_empty_window(small):
    late = admit(FinSet(), prog(5, 1), Card(), small)
    early = admit(FinSet(), prog(1, 2), Card(), small)
    witness = parse_name("(canon (t) 0)")
    assert isinstance(forces_skolem(late, parse_formula(NO_ONES), witness, small), ForcedUpTo)
    assert isinstance(forces_skolem(early, parse_formula(NO_ONES), witness, small), Refuted)


def test_refutes_herbrand(small):
    theta = parse_formula(NO_ONES)
    witness = parse_name("(canon (t) 0)")
    ones = admit(FinSet.of([0, 1]), nat(), Card(), small)
    odds = admit(FinSet(), prog(1, 2), Card(), small)
    assert isinstance(refutes_herbrand(ones, theta, witness, small), ForcedUpTo)
    assert isinstance(refutes_herbrand(odds, theta, witness, small), Refuted)


def test_family_helpers():
    phi, free = parse_family("(forall u (atom (app (canon (+ x y)) (p w)) u))")
    assert free == ("p", "w")
    fixed = fix_parameters(phi, (2,))
    sentence = instance(fixed, 3)
    assert classical_eval(sentence, nat()) is False
    assert stem_window(FinSet.of([0]), prog(0, 2), 2) == [
        FinSet.of([0]),
        FinSet.of([0, 2]),
        FinSet.of([0, 4]),
        FinSet.of([0, 2, 4]),
    ]
    envelopes = list(candidate_envelopes(nat(), FinSet.of([0]), 2))
    assert envelopes[0] == nat()
    assert envelopes[1] == nat()
    assert envelopes[2] == nat().diff(FinSet.of([1]))
