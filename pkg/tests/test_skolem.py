import pytest

from core.finsets import BitString
from formula import Forall, SyntClass, Var, classical_eval, classify, parse_family, parse_formula
from names import proj_name
from oracles import all_strings
from skolem import (
    compile_bounded,
    herbrandize,
    pi1_normal_form,
    skolemize,
    term_name,
    uniformize_sigma1,
    witness_bounded,
    witness_pi1,
    witness_sigma1,
    witness_skolem,
)

OPEN_BOUNDED = [
    "(atom (app (chi) (v)) 1)",
    "(ball x v (atom (app (chi) (x)) 1))",
    "(not (ball x v (not (atom (app (chi) (x)) 1))))",
    "(and (atom (app (chi) (v)) 0) (ball y 1 (atom (app (chi) (y)) 1)))",
    "(or (atom v 2) (ball y v (atom (app (chi) (y)) (app (chi) (v)))))",
]

CLOSED_BOUNDED = [
    "(atom (app (chi) (1)) 1)",
    "(ball x 2 (atom (app (chi) (x)) 1))",
    "(not (ball x 2 (atom (app (chi) (x)) 1)))",
    "(and (ball x 2 (atom (app (chi) (x)) 1)) (not (atom (app (chi) (3)) 1)))",
    "(not (and (atom (app (chi) (0)) 1) (atom (app (chi) (2)) 0)))",
    "(ball x 1 (not (ball y 2 (atom (app (chi) (y)) (app (chi) (x))))))",
]


@pytest.mark.parametrize("text", OPEN_BOUNDED)
def test_compiled_names_vanish_exactly_on_the_truth_set(text):
    phi = parse_formula(text, free=("v",))
    name = compile_bounded(phi, 1)
    for tau in all_strings(4):
        for v in range(4):
            z = name.query(tau, (v,))
            if z is not None:
                assert classical_eval(phi, tau, env=(v,)) is (z == 0)


def test_compile_rejects_unbounded_formulas():
    with pytest.raises(ValueError):
        compile_bounded(parse_formula("(forall x (atom x 0))"))


def test_term_names_are_projections_and_superpositions():
    assert term_name(Var(0), 2) == proj_name(1, 2)
    phi, _ = parse_family("(atom (app (canon (+ x 1)) (a)) b)")
    name = term_name(phi.left, 2)
    assert name.query(BitString(""), (4, 9)) == 5
    with pytest.raises(ValueError):
        term_name(Var(3), 2)


@pytest.mark.slow
@pytest.mark.parametrize("text", CLOSED_BOUNDED)
def test_bounded_witnesses_preserve_truth(text):
    theta = parse_formula(text)
    w_s, w_h = witness_bounded(theta)
    assert w_s.arity == 1 and w_h.arity == 1
    skolem_form = skolemize(theta).instantiate(w_s)
    herbrand_form = herbrandize(theta).instantiate(w_h)
    for tau in all_strings(4):
        truth = classical_eval(theta, tau, depth=4)
        assert truth is not None
        assert classical_eval(skolem_form, tau, depth=4) is truth
        assert classical_eval(herbrand_form, tau, depth=4) is truth


def test_witness_points_at_the_first_failure():
    theta = parse_formula("(not (ball x 2 (atom (app (chi) (x)) 1)))")
    w_s, _ = witness_bounded(theta)
    assert w_s.query(BitString("1101"), (0,)) == 2
    assert w_s.query(BitString("0111"), (0,)) == 0


def test_skolem_rules_leave_atoms_alone():
    phi = parse_formula("(forall x (atom (app (chi) (x)) 0))")
    template = skolemize(phi)
    assert template.form == "S" and template.free == 0
    assert template.body == phi
    assert template.trace[0].startswith("S universal x")


def test_herbrand_form_reads_the_hole_at_zero():
    template = herbrandize(parse_formula("(forall x (atom (app (chi) (x)) 0))"))
    assert template.form == "H"
    assert template.body == parse_formula("(atom (app (chi) ((hole () 0))) 0)")


def test_pi1_normal_form_is_pi01():
    phi = parse_formula("(forall x (not (and (forall y (atom y x)) (atom x 1))))")
    normal = pi1_normal_form(skolemize(phi))
    assert isinstance(normal, Forall)
    assert classify(normal) == SyntClass.PI01


def test_witness_shapes():
    pi1 = parse_formula("(forall x (atom (app (chi) (x)) 0))")
    assert witness_skolem(pi1).arity == 1
    assert witness_pi1(pi1).arity == 1
    sigma1 = parse_formula("(exists x (atom (app (chi) (x)) 1))")
    assert witness_sigma1(sigma1).arity == 1
    with pytest.raises(ValueError):
        witness_pi1(sigma1)
    with pytest.raises(ValueError):
        witness_sigma1(pi1)
    with pytest.raises(ValueError):
        witness_bounded(pi1)


def test_sigma1_witness_finds_the_least_index():
    sigma1 = parse_formula("(exists x (atom (app (chi) (x)) 1))")
    w = witness_sigma1(sigma1)
    assert w.query(BitString("0010"), (0,)) == 2
    assert w.query(BitString("00"), (0,)) is None


def test_uniformization_picks_the_least_witness():
    phi = parse_formula("(atom (app (chi) (w)) 1)", free=("w",))
    least = uniformize_sigma1(phi)
    assert least.arity == 0
    assert least.query(BitString("0010"), ()) == 2
    with pytest.raises(ValueError):
        uniformize_sigma1(parse_formula("(forall x (atom x 0))"))


def test_witness_trace_lines():
    lines: list[str] = []
    witness_bounded(parse_formula("(not (atom 1 2))"), trace_lines=lines)
    assert lines == ["negation: swap S and H", "  atomic: both witnesses 0"]
