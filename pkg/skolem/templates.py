"""
Skolemization and Herbrandization over a single unary hole W.

Rules, with W' the slice of W handed to the subformula:

    atomic      θ_S = θ = θ_H
    ¬φ          θ_S = ¬φ_H(W)                      θ_H = ¬φ_S(W)
    φ ∧ ψ       θ_S = φ_S(W(2t)) ∧ ψ_S(W(2t+1))     θ_H = φ_H(W) ∧ ψ_H(W)
    ∀w φ        θ_S = ∀w φ_S(W(⟨w,t⟩))             θ_H = φ_H(W(t+1))[w := W(0)]
    ∀w≤F φ      θ_S = ∀w≤F φ_S(W(⟨w,2t⟩))
                θ_H = ∀w≤F ¬(w = W(0) ∧ ¬φ_H(W(t+1)))

Hole occurrences are HoleApp(chain, arg); the chain records the slices from
the outermost inward and is folded into an index when a name is substituted.

pi1_normal_form bounds every universal of a Skolemization by one fresh outer
variable u, which gives the equivalent Π⁰₁ sentence ∀u ψ(u).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from opentelemetry import trace

from formula.ast import (
    And,
    Atom,
    BForall,
    Forall,
    Formula,
    HoleApp,
    Not,
    Step,
    Var,
    const,
    fill_hole,
    free_count,
    instantiate_top,
    shift,
    shift_term,
)
from formula.classes import desugar
from names.base import Name

tracer = trace.get_tracer("skolem")

Chain = tuple[Step, ...]


@dataclass(frozen=True)
class SkolemTemplate:
    body: Formula
    form: str
    free: int
    trace: tuple[str, ...] = field(default=(), compare=False)

    def instantiate(self, witness: Name) -> Formula:
        return fill_hole(self.body, witness)


def _shift_chain(chain: Chain, d: int = 1) -> Chain:
    return tuple(Step(s.kind, shift_term(s.term, d) if s.term is not None else None) for s in chain)


def _hole(chain: Chain, arg) -> HoleApp:
    return HoleApp(chain, arg)


def _chain_text(chain: Chain) -> str:
    if not chain:
        return "W"
    return "W∘" + "∘".join(s.kind for s in chain)


class _Translator:
    def __init__(self):
        self.lines: list[str] = []

    def note(self, depth: int, rule: str, chain: Chain):
        self.lines.append(f"{'  ' * depth}{rule} [{_chain_text(chain)}]")

    def skolem(self, phi: Formula, chain: Chain, depth: int = 0) -> Formula:
        if isinstance(phi, Atom):
            self.note(depth, "S atomic: unchanged", chain)
            return phi
        if isinstance(phi, Not):
            self.note(depth, "S negation: ¬ of the Herbrand form", chain)
            return Not(self.herbrand(phi.body, chain, depth + 1))
        if isinstance(phi, And):
            self.note(depth, "S conjunction: even slice left, odd slice right", chain)
            return And(
                self.skolem(phi.left, chain + (Step("even"),), depth + 1),
                self.skolem(phi.right, chain + (Step("odd"),), depth + 1),
            )
        if isinstance(phi, Forall):
            self.note(depth, f"S universal {phi.var}: pair slice at {phi.var}", chain)
            inner = _shift_chain(chain) + (Step("pairfix", Var(0)),)
            return Forall(phi.var, self.skolem(phi.body, inner, depth + 1))
        if isinstance(phi, BForall):
            self.note(depth, f"S bounded universal {phi.var}: pair slice at (w, 2t)", chain)
            inner = _shift_chain(chain) + (Step("pairfix", Var(0)), Step("even"))
            return BForall(phi.var, phi.bound, self.skolem(phi.body, inner, depth + 1))
        raise TypeError(f"not a desugared formula: {phi!r}")

    def herbrand(self, phi: Formula, chain: Chain, depth: int = 0) -> Formula:
        if isinstance(phi, Atom):
            self.note(depth, "H atomic: unchanged", chain)
            return phi
        if isinstance(phi, Not):
            self.note(depth, "H negation: ¬ of the Skolem form", chain)
            return Not(self.skolem(phi.body, chain, depth + 1))
        if isinstance(phi, And):
            self.note(depth, "H conjunction: same hole on both sides", chain)
            return And(
                self.herbrand(phi.left, chain, depth + 1),
                self.herbrand(phi.right, chain, depth + 1),
            )
        if isinstance(phi, Forall):
            self.note(depth, f"H universal {phi.var}: {phi.var} := W(0), shift slice", chain)
            inner = _shift_chain(chain) + (Step("shift"),)
            body = self.herbrand(phi.body, inner, depth + 1)
            return instantiate_top(body, _hole(chain, const(0)))
        if isinstance(phi, BForall):
            self.note(depth, f"H bounded universal {phi.var}: fails only at {phi.var} = W(0)", chain)
            outer = _shift_chain(chain)
            inner = outer + (Step("shift"),)
            guard = Atom(Var(0), _hole(outer, const(0)))
            body = self.herbrand(phi.body, inner, depth + 1)
            return BForall(phi.var, phi.bound, Not(And(guard, Not(body))))
        raise TypeError(f"not a desugared formula: {phi!r}")


def skolemize(theta: Formula) -> SkolemTemplate:
    theta = desugar(theta)
    with tracer.start_as_current_span("skolemize") as span:
        t = _Translator()
        body = t.skolem(theta, ())
        span.set_attribute("skolem.steps", len(t.lines))
        return SkolemTemplate(body, "S", free_count(theta), tuple(t.lines))


def herbrandize(theta: Formula) -> SkolemTemplate:
    theta = desugar(theta)
    with tracer.start_as_current_span("herbrandize") as span:
        t = _Translator()
        body = t.herbrand(theta, ())
        span.set_attribute("skolem.steps", len(t.lines))
        return SkolemTemplate(body, "H", free_count(theta), tuple(t.lines))


def _bound_universals(phi: Formula, depth: int) -> Formula:
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Not):
        return Not(_bound_universals(phi.body, depth))
    if isinstance(phi, And):
        return And(_bound_universals(phi.left, depth), _bound_universals(phi.right, depth))
    if isinstance(phi, Forall):
        return BForall(phi.var, Var(depth), _bound_universals(phi.body, depth + 1))
    if isinstance(phi, BForall):
        return BForall(phi.var, phi.bound, _bound_universals(phi.body, depth + 1))
    raise TypeError(f"not a desugared formula: {phi!r}")


def pi1_normal_form(template: SkolemTemplate | Formula) -> Formula:
    """∀u ψ(u) where ψ bounds every universal of the body by u.

    Free variables (and hole chains) keep their meaning: u is bound just
    inside them."""
    body = template.body if isinstance(template, SkolemTemplate) else desugar(template)
    return Forall("u", _bound_universals(shift(body, 1), 0))

