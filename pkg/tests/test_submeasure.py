import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import BudgetExceeded, ParseError
from core.finsets import BitString, FinSet
from core.periodic import nat, prog
from core.reader import read_one
from names.oracle import GenericChi
from oracles import mazur_brute, meet_brute, theta_brute
from submeasure import (
    BoundedSoFar,
    Card,
    Const,
    Cylinder,
    Dom,
    Growth,
    IMeet,
    Join,
    Mazur,
    Meet,
    Stab,
    Subsets,
    Unknown,
    Witnessed,
    clear_cache,
    decompose,
    fin_generated_check,
    mazur_eval,
    mazur_partition,
    mazur_theta,
    meet_all,
    unbounded_check,
)
import submeasure.expressions as expressions
import submeasure.mazur as mazur_module
from submeasure.checks import recheck_witnessed
from submeasure.expressions import join, sup_measure
from submeasure.mazur import in_class
from submeasure.syntax import parse_submeasure, parse_tree

FAMILY = (Subsets(prog(0, 2)), Cylinder(2, frozenset({"10"})))

CATALOG = [
    Card(),
    Const(2),
    sup_measure(),
    Mazur((Subsets(prog(0, 2)),)),
    Join(Card(), Const(1)),
    Mazur(FAMILY),
]

small_sets = st.frozensets(st.integers(0, 6), max_size=7).map(FinSet.of)
measures = st.sampled_from(CATALOG)


@given(measures, measures, small_sets)
def test_meet_matches_split_search(mu, nu, x):
    assert Meet(mu, nu).eval(x) == meet_brute(mu, nu, x)


@given(measures, small_sets, small_sets)
def test_catalog_is_monotone_and_subadditive(mu, x, y):
    assert mu.eval(x) <= mu.eval(x.union(y))
    assert mu.eval(x.union(y)) <= mu.eval(x) + mu.eval(y)


@given(measures, small_sets)
def test_meet_with_itself_is_identity(mu, x):
    assert Meet(mu, mu).eval(x) == mu.eval(x)


def test_empty_set_has_value_zero():
    for mu in CATALOG:
        assert mu.eval(FinSet()) == 0


def test_sup_measure_is_max_plus_one():
    assert sup_measure().eval(FinSet.of([3, 5])) == 6
    assert sup_measure().eval(FinSet.of([0])) == 1


@given(small_sets)
def test_mazur_matches_partition_search(x):
    assert mazur_theta(FAMILY, x) == theta_brute(FAMILY, x)
    assert mazur_eval(FAMILY, x) == mazur_brute(FAMILY, x)


@given(small_sets)
def test_mazur_partition_is_optimal(x):
    pieces = mazur_partition(FAMILY, x)
    union = FinSet()
    for piece in pieces:
        assert not piece.inter(union)
        union = union.union(piece)
    assert union == x
    assert sum(mazur_theta(FAMILY, p) for p in pieces) == mazur_eval(FAMILY, x)


def test_decompose_respects_the_class_bound():
    x = FinSet.of([0, 1, 2, 4, 6])
    value = mazur_eval(FAMILY, x)
    pieces = decompose(FAMILY, x, value)
    assert pieces is not None and len(pieces) <= value
    assert all(in_class(FAMILY, p, value) for p in pieces)
    assert decompose(FAMILY, x, value - 1) is None


def test_subsets_of_the_first_tree_are_cheap():
    evens = FinSet.of([0, 2, 4, 6, 8, 10])
    assert mazur_theta(FAMILY, evens) == 1
    assert Mazur(FAMILY).eval(evens) == 1


def test_dominating_enumerations():
    mu = Dom(Growth((0,), 0, 50))
    assert mu.eval(FinSet.of([0, 1])) == 2
    assert mu.eval(FinSet.of([60])) == 1
    assert mu.eval(FinSet.of([0, 60])) == 1


def test_imeet_unfolds_into_meets():
    mu = IMeet((Const(5), Card()), 2)
    assert mu.eval(FinSet.of([1, 2, 3])) == 3
    assert mu.expansion == Meet(Const(5), Join(Card(), Const(1)))
    with pytest.raises(ValueError):
        IMeet((), 2)


def test_join_folds_constants():
    assert join(Const(2), Const(5)) == Const(5)
    assert join(Card(), Const(0)) == Card()
    assert join(Const(0), Card()) == Card()
    assert join(Card(), Const(1)) == Join(Card(), Const(1))


def test_meet_all():
    assert meet_all([Card()]) == Card()
    assert meet_all([Card(), Const(1), Const(2)]) == Meet(Meet(Card(), Const(1)), Const(2))
    with pytest.raises(ValueError):
        meet_all([])


def test_meet_refuses_sets_past_the_budget():
    clear_cache()
    with pytest.raises(BudgetExceeded) as e:
        Meet(Card(), sup_measure()).eval(FinSet.range(10), budget=4)
    assert e.value.limit == 4


def test_memo_caches_stay_bounded(monkeypatch):
    monkeypatch.setattr(mazur_module, "CACHE_ENTRIES", 5)
    clear_cache()
    family = (Subsets(prog(0, 2)),)
    for n in range(1, 8):
        assert Card().eval(FinSet.range(n)) == n
        assert mazur_eval(family, FinSet.range(n)) == mazur_brute(family, FinSet.range(n))
    assert len(expressions._CACHE) <= 5
    assert len(mazur_module._THETA) <= 5
    assert len(mazur_module._BEST) <= 5
    clear_cache()


def test_stab_rejects_strings_that_leave_the_oracle_open():
    tree = Stab(GenericChi(), FinSet())
    assert tree.contains(BitString("000"))
    assert not tree.contains(BitString("010"))


# ---- Certificates ----

def test_unbounded_check_finds_a_witness():
    verdict = unbounded_check(Card(), nat(), 4, 10)
    assert verdict == Witnessed(4, FinSet.of([0, 1, 2, 3]))
    assert recheck_witnessed(Card(), nat(), verdict)
    assert not recheck_witnessed(Card(), prog(1, 2), verdict)


def test_unbounded_check_reports_bounded_prefixes():
    assert unbounded_check(Const(3), nat(), 4, 10) == BoundedSoFar(10, 3)


def test_unbounded_check_gives_up_past_the_budget():
    clear_cache()
    verdict = unbounded_check(Meet(Card(), sup_measure()), nat(), 100, 20, budget=4)
    assert verdict == Unknown(4)
    assert verdict.payload() == {"kind": "unknown", "budget": 4}


def test_unbounded_check_sets_span_attributes(spans):
    unbounded_check(Card(), nat(), 2, 10)
    span = [s for s in spans.get_finished_spans() if s.name == "unbounded_check"][-1]
    assert span.attributes["submeasure.verdict"] == "witnessed"
    assert span.attributes["submeasure.target"] == 2


def test_fin_generated_check_agrees_with_meet():
    report = fin_generated_check(Card(), Const(2), nat(), 5)
    assert report.value == 2
    assert report.left == FinSet()
    assert report.right == FinSet.range(5)
    assert report.agrees
    assert report.payload()["agrees"] is True


# ---- Grammar ----

@pytest.mark.parametrize("mu", CATALOG + [Dom(Growth((0, 2), 1, 3)), IMeet((Card(), Const(1)), 3)])
def test_describe_parses_back(mu):
    assert parse_submeasure(mu.describe()) == mu


def test_parse_trees():
    assert parse_tree(read_one('(cylinder 2 "10" "01")')) == Cylinder(2, frozenset({"10", "01"}))
    assert parse_tree(read_one("(subsets (prog 0 2))")) == Subsets(prog(0, 2))


def test_parse_errors():
    for text in ["(const)", "(imeet 0 (card))", '(mazur (cylinder 2 "1"))', "(dom (table) (card))", "(bogus)"]:
        with pytest.raises(ParseError):
            parse_submeasure(text)


def test_labels_in_submeasures():
    env = {"mu": Card()}
    assert parse_submeasure("(meet mu (const 1))", env) == Meet(Card(), Const(1))
