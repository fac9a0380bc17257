import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import InconsistentTable, ParseError, UnknownLabel
from core.finsets import BitString
from core.pairing import pair
from names import (
    EmptyName,
    GenericChi,
    GenericEnum,
    Slice,
    TuringTable,
    const_name,
    proj_name,
    superpose,
)
from names.syntax import parse_name

bits = st.text("01", max_size=8).map(BitString)

CATALOG = [
    GenericChi(),
    GenericEnum(),
    parse_name("(canon (+ x 1))"),
    parse_name("(superpose (canon (x y) (* x y)) (chi) (enum))"),
    parse_name("(primrec (chi) (canon (z i x) (+ z x)))"),
    parse_name('(table (("1" 0 5) ("01" 1 7)))'),
    Slice(GenericEnum(), "odd"),
    parse_name("(bsum (chi) (canon (x w) w))"),
]


def test_generic_characteristic_function():
    tau = BitString("101")
    chi = GenericChi()
    assert [chi.query(tau, (x,)) for x in range(4)] == [1, 0, 1, None]


def test_generic_enumeration():
    enum = GenericEnum()
    tau = BitString("0101")
    assert enum.query(tau, (0,)) == 1
    assert enum.query(tau, (1,)) == 3
    assert enum.query(tau, (2,)) is None


def test_arity_is_checked():
    with pytest.raises(ValueError):
        GenericChi().query(BitString("1"), (0, 1))


def test_turing_tables():
    table = TuringTable.of([("1", 0, 5), ("01", 0, 6), ("", 1, 2)])
    assert table.query(BitString("10"), (0,)) == 5
    assert table.query(BitString("01"), (0,)) == 6
    assert table.query(BitString("0"), (0,)) is None
    assert table.query(BitString(""), (1,)) == 2
    assert table.arguments() == [0, 1]


def test_inconsistent_tables_are_rejected():
    with pytest.raises(InconsistentTable) as e:
        TuringTable.of([("1", 0, 1), ("10", 0, 2)])
    assert e.value.x == 0
    with pytest.raises(InconsistentTable):
        parse_name('(table (("" 3 1) ("0" 3 2)))')


def test_canonical_names_ignore_the_oracle():
    succ = parse_name("(canon (+ x 1))")
    assert succ.arity == 1
    assert succ.query(BitString(""), (4,)) == 5
    assert parse_name("(canon (x y) (- x y))").query(BitString(""), (2, 5)) == 0
    assert parse_name("3").query(BitString(""), ()) == 3
    assert const_name(3).describe() == "(canon () 3)"
    assert proj_name(1, 2).query(BitString(""), (8, 9)) == 9


def test_superposition_waits_for_every_part():
    product = superpose(parse_name("(canon (x y) (* x y))"), GenericChi(), GenericEnum())
    assert product.query(BitString("0110"), (1,)) == 2
    assert product.query(BitString("01"), (1,)) is None


def test_superposition_checks_arities():
    with pytest.raises(ValueError):
        superpose(parse_name("(canon (x y) (* x y))"), GenericChi())
    with pytest.raises(ValueError):
        superpose(const_name(1))


def test_primitive_recursion():
    doubling = parse_name("(primrec 1 (canon (z i) (* z 2)))")
    assert doubling.arity == 1
    assert doubling.query(BitString(""), (3,)) == 8
    assert doubling.query(BitString(""), (0,)) == 1


def test_bounded_sum():
    total = parse_name("(bsum (canon (x) x) (canon (x w) w))")
    assert total.query(BitString(""), (4,)) == 10


def test_fix_and_lift():
    assert parse_name("(fix (canon (x y) (- x y)) (7))").query(BitString(""), (3,)) == 4
    lifted = parse_name("(lift 1 2)")
    assert lifted.arity == 1
    assert lifted.query(BitString(""), (5,)) == 2


def test_empty_name_is_never_defined():
    nowhere = EmptyName(2)
    assert nowhere.query(BitString("1111"), (0, 1)) is None
    assert nowhere.describe() == "(nowhere 2)"


def test_slices():
    enum = GenericEnum()
    tau = BitString("111111")
    assert Slice(enum, "even").query(tau, (1,)) == 2
    assert Slice(enum, "odd").query(tau, (1,)) == 3
    assert Slice(enum, "shift").query(tau, (0,)) == 1
    assert Slice(enum, "head").arity == 0
    assert Slice(enum, "head").query(tau, ()) == 0
    chi = GenericChi()
    assert Slice(chi, "pairfix", 1).index(1) == pair(1, 1)
    assert Slice(chi, "pairfix", 1).query(BitString("00001"), (1,)) == 1


def test_slice_errors():
    with pytest.raises(ValueError):
        Slice(const_name(1), "even")
    with pytest.raises(ValueError):
        Slice(GenericChi(), "sideways")
    with pytest.raises(ValueError):
        Slice(GenericChi(), "pairfix")
    with pytest.raises(ValueError):
        Slice(GenericChi(), "even", 3)


@pytest.mark.parametrize("name", CATALOG + [EmptyName(3), const_name(4), parse_name("(lift 2 3)")])
def test_describe_parses_back(name):
    assert parse_name(name.describe()) == name
    assert parse_name(name.describe()).key == name.key


@pytest.mark.parametrize(
    "text",
    [
        "(canon (x x) x)",
        "(canon (x) y)",
        "(superpose (chi))",
        "(primrec (chi) (chi))",
        "(slice sideways (chi))",
        "(fix (chi) (1 2))",
        "(bogus)",
        '(table (("2" 0 1)))',
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_name(text)


def test_labels():
    env = {"F": GenericChi()}
    assert parse_name("(superpose (canon (+ x 1)) F)", env).query(BitString("1"), (0,)) == 2
    with pytest.raises(UnknownLabel):
        parse_name("G", env)


@given(st.sampled_from(CATALOG), bits, bits, st.integers(0, 5))
def test_names_are_monotone(name, tau, extension, x):
    args = (x,) * name.arity
    value = name.query(tau, args)
    if value is not None:
        assert name.query(BitString(tau.bits + extension.bits), args) == value
