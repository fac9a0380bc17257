import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import ParseError, UnknownLabel
from core.finsets import BitString, FinSet
from core.pairing import fst, pair, snd, unpair, untuple
from core.periodic import PeriodicSet, empty, fin, nat, periodic, prog
from core.reader import Symbol, String, expect_int, read, read_one, write
from core.syntax import parse_finset, parse_set
from core.trees import free_positions, tree_member, tree_strings
from oracles import tree_brute

naturals = st.frozensets(st.integers(0, 20), max_size=8)
periodics = st.tuples(
    st.text("01", max_size=5), st.text("01", min_size=1, max_size=4)
).map(lambda p: periodic(*p))


# ---- FinSet / BitString ----

def test_finset_is_sorted_and_deduplicated():
    assert FinSet.of([3, 1, 3, 0]).elements == (0, 1, 3)


def test_finset_rejects_unsorted_elements():
    with pytest.raises(ValueError):
        FinSet((2, 1))


@given(naturals)
def test_code_round_trip(items):
    x = FinSet.of(items)
    assert FinSet.from_code(x.code) == x


@given(naturals, naturals)
def test_boolean_operations_match_python_sets(left, right):
    x, y = FinSet.of(left), FinSet.of(right)
    assert set(x.union(y)) == left | right
    assert set(x.inter(y)) == left & right
    assert set(x.diff(y)) == left - right
    assert x.issubset(x.union(y))


def test_characteristic_and_describe():
    x = FinSet.of([0, 2])
    assert x.characteristic() == BitString("101")
    assert x.characteristic(5).bits == "10100"
    assert x.describe() == "(fin 0 2)"


def test_subsets_come_smallest_first():
    subsets = list(FinSet.of([1, 4, 7]).subsets())
    assert len(subsets) == 8
    assert subsets[0] == FinSet()
    assert subsets[-1] == FinSet.of([1, 4, 7])


def test_bitstring_views():
    tau = BitString("0110")
    assert tau.ones() == FinSet.of([1, 2])
    assert tau.zeros() == FinSet.of([0, 3])
    assert tau.prefix(2) == BitString("01")
    assert tau.extend("1").bits == "01101"
    assert BitString("01").compatible(tau)
    assert not BitString("1").compatible(tau)


def test_bitstring_rejects_other_characters():
    with pytest.raises(ValueError):
        BitString("012")


# ---- Pairing ----

def test_pairing_small_values():
    assert [pair(0, 0), pair(1, 0), pair(0, 1), pair(2, 0)] == [0, 1, 2, 3]


@given(st.integers(0, 500), st.integers(0, 500))
def test_unpair_inverts_pair(w, t):
    assert unpair(pair(w, t)) == (w, t)
    assert fst(pair(w, t)) == w and snd(pair(w, t)) == t


def test_untuple():
    assert untuple(pair(1, pair(2, 3)), 3) == (1, 2, 3)
    assert untuple(9, 1) == (9,)
    assert untuple(9, 0) == ()


# ---- Periodic sets ----

def test_progressions():
    evens = prog(0, 2)
    assert evens.restrict(7) == FinSet.of([0, 2, 4, 6])
    assert prog(1, 2) == PeriodicSet("", "01")
    assert evens.complement() == prog(1, 2)
    assert evens.union(prog(1, 2)) == nat()
    assert evens.inter(prog(1, 2)) == empty()


def test_progression_step_must_be_positive():
    with pytest.raises(ValueError):
        prog(0, 0)


@given(st.text("01", max_size=5), st.text("01", min_size=1, max_size=4))
def test_canonical_form_keeps_membership(prefix, period):
    raw = PeriodicSet(prefix, period)
    s = periodic(prefix, period)
    assert all(raw.member(n) == s.member(n) for n in range(60))
    assert len(s.prefix) <= len(prefix) and len(s.period) <= len(period)


@given(periodics, periodics)
def test_algebra_is_pointwise(s, t):
    for n in range(60):
        assert (n in s.union(t)) == (n in s or n in t)
        assert (n in s.inter(t)) == (n in s and n in t)
        assert (n in s.diff(t)) == (n in s and n not in t)


@given(periodics, periodics)
def test_equal_sets_are_equal_values(s, t):
    same = all(s.member(n) == t.member(n) for n in range(200))
    assert (s == t) == same


def test_finite_sets_enumerate_and_terminate():
    x = fin([1, 3])
    assert not x.is_infinite()
    assert list(x.elements()) == [1, 3]
    assert prog(0, 3).first(3, start=1) == FinSet.of([3, 6, 9])


def test_subset_relation():
    assert prog(0, 4).issubset(prog(0, 2))
    assert not prog(0, 2).issubset(prog(0, 4))
    assert prog(0, 2).describe() == '(periodic "" "10")'


# ---- Reader and set grammar ----

def test_read_nested_forms():
    form = read_one('(a (b 1) "01") ; trailing comment')
    assert form == ["a", ["b", 1], "01"]
    assert isinstance(form[0], Symbol)
    assert isinstance(form[2], String)
    assert write(form) == '(a (b 1) "01")'


def test_read_reports_positions():
    with pytest.raises(ParseError) as e:
        read("(a (b)")
    assert e.value.position == 0
    with pytest.raises(ParseError):
        read("a)")


def test_negative_literals_are_rejected_by_grammars():
    assert read_one("-3") == -3
    with pytest.raises(ParseError):
        expect_int(read_one("-3"))
    with pytest.raises(ParseError):
        parse_finset("(fin -1)")


def test_parse_sets():
    assert parse_set("(union (prog 0 2) (prog 1 2))") == nat()
    assert parse_set("(diff (nat) (fin 0))") == periodic("0", "1")
    assert parse_set('(periodic "01" "1")') == periodic("0", "1")
    assert parse_finset("(fin 3 1)") == FinSet.of([1, 3])


def test_parse_set_errors():
    for text in ["(prog 1 0)", '(periodic "01" "")', "(prog 1)", "(bogus)", "(union (nat))"]:
        with pytest.raises(ParseError):
            parse_set(text)


def test_labels_resolve_through_the_environment():
    env = {"X": FinSet.of([1]), "E": prog(0, 2)}
    assert parse_set("X", env) == fin([1])
    assert parse_set("(inter E (nat))", env) == prog(0, 2)
    with pytest.raises(UnknownLabel):
        parse_set("Y", env)
    with pytest.raises(ParseError):
        parse_finset("E", env)


# ---- Trees ----

def test_tree_strings_fix_stem_and_envelope():
    strings = [t.bits for t in tree_strings(FinSet.of([0]), prog(0, 2), 4)]
    assert strings == ["1000", "1010"]
    assert tree_member(FinSet.of([0]), prog(0, 2), BitString("10"))
    assert not tree_member(FinSet.of([0]), prog(0, 2), BitString("01"))


@given(naturals, periodics, st.integers(0, 7))
def test_tree_strings_match_definition(items, A, length):
    a = FinSet.of(e for e in items if e in A and e < 8)
    strings = list(tree_strings(a, A, length))
    assert strings == tree_brute(a, A, length)
    assert len(strings) == 2 ** free_positions(a, A, length)


def test_stem_outside_envelope_gives_empty_tree():
    assert list(tree_strings(FinSet.of([1]), prog(0, 2), 3)) == []
