"""
Deciding Π⁰₂ sentences ∀w ¬φ(w) / ∃w φ(w) for a Π⁰₁ family φ(w).

ρ is the MAZUR submeasure over the closed pieces
{B ⊆ A : φ̂(b, B ∪ b; y)} for the stems b and values y of a window. Then either

    (μ ∧ ρ)(A) = ∞   and (a, A, μ ∧ ρ) forces ∀w ¬φ(w), or
    (μ ∧ ρ)(A) < ∞   and some piece (b, B, μ) forces φ(y).

The dichotomy is read off unbounded_check. In the first branch every w below
the quantifier bound must be refuted on the new condition.

In the second, A = B_0 ∪ B_1 ∪ ... ∪ B_k with μ(B_0) finite and each B_i in a
tree of the window. On the scanned prefix this is the optimal split of
restrict(A, n) between μ and ρ, with the ρ side cut into Mazur pieces. A piece
covered by the tree of (b, y) becomes the envelope b ∪ piece ∪ (A past n), and
the first one that admits and forces φ(y) is the decision. Pieces are tried by
decreasing μ value. When no piece works, A, its tails and its residue classes
mod d ≤ 4 (each joined with b) are tried as envelopes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from opentelemetry import trace

from core.errors import BudgetExceeded, InvalidCondition
from core.finsets import FinSet
from formula.ast import Formula
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit
from forcing.families import candidate_envelopes, family_matrix, fix_parameters, instance, stem_window
from forcing.pi1 import ForcedUpTo, Refuted, counterexample, pi1_forces, pi1_matrix
from submeasure.checks import (
    BoundedSoFar,
    UnboundedVerdict,
    Unknown,
    Witnessed,
    fin_generated_check,
    unbounded_check,
)
from submeasure.expressions import Mazur, Meet
from submeasure.mazur import mazur_partition
from submeasure.trees import Pi1Hat

tracer = trace.get_tracer("forcing")


@dataclass(frozen=True)
class DecisionReport:
    """branch is "forall-not", "exists" or "unknown"."""

    branch: str
    dichotomy: UnboundedVerdict
    condition: Condition | None = None
    y: int | None = None
    sweep: tuple[Refuted, ...] = field(default=())
    verdict: ForcedUpTo | None = None

    def payload(self) -> dict:
        out = {"branch": self.branch, "dichotomy": self.dichotomy.payload()}
        if self.condition is not None:
            out["condition"] = self.condition.payload()
        if self.y is not None:
            out["y"] = self.y
        if self.sweep:
            out["sweep"] = [r.payload() for r in self.sweep]
        if self.verdict is not None:
            out["verdict"] = self.verdict.payload()
        return out


def decision_window(c: Condition, budgets: Budgets) -> list[tuple[FinSet, int]]:
    return [(b, y) for b in stem_window(c.a, c.A, budgets.extension) for y in range(budgets.values)]


def rho_submeasure(c: Condition, phi: Formula, window: list[tuple[FinSet, int]]) -> Mazur:
    _, T = family_matrix(fix_parameters(phi, ()))
    return Mazur(tuple(Pi1Hat(T, b, y, c.A) for b, y in window))


def _forall_not(c: Condition, phi: Formula, rho: Mazur, dichotomy: Witnessed, budgets: Budgets) -> DecisionReport:
    strengthened = Condition(c.a, c.A, Meet(c.mu, rho), dichotomy)
    sweep = []
    for w in range(budgets.bound):
        verdict = pi1_forces(strengthened, instance(phi, w), budgets)
        if not isinstance(verdict, Refuted):
            return DecisionReport("unknown", dichotomy, strengthened)
        sweep.append(verdict)
    return DecisionReport("forall-not", dichotomy, strengthened, sweep=tuple(sweep))


def split_pieces(
    c: Condition, rho: Mazur, window, n: int, budgets: Budgets
) -> list[tuple[FinSet, FinSet, int]]:
    """(piece, b, y) for each Mazur piece on the ρ side of the optimal split of
    restrict(A, n) that the tree of (b, y) covers, by decreasing μ value."""
    try:
        split = fin_generated_check(c.mu, rho, c.A, n, budgets.dp)
        pieces = mazur_partition(rho.family, split.right, budgets.dp)
        ranked = sorted(pieces, key=lambda p: -c.mu.eval(p, budgets.dp))
    except BudgetExceeded:
        return []
    out = []
    for piece in ranked:
        for tree, (b, y) in zip(rho.family, window):
            if tree.covers(piece):
                out.append((piece, b, y))
    return out


def _try_envelope(c: Condition, b: FinSet, envelope, y: int, phi: Formula, budgets: Budgets):
    sentence = instance(phi, y)
    n, T = pi1_matrix(sentence)
    if counterexample(b, envelope, T, n, budgets.depth, budgets.bound) is not None:
        return None
    try:
        piece = admit(b, envelope, c.mu, budgets)
    except InvalidCondition:
        return None
    verdict = pi1_forces(piece, sentence, budgets)
    return (piece, verdict) if isinstance(verdict, ForcedUpTo) else None


def _exists(
    c: Condition, phi: Formula, rho: Mazur, window, dichotomy: UnboundedVerdict, budgets: Budgets
) -> DecisionReport:
    with tracer.start_as_current_span("pi2_exists") as span:
        if isinstance(dichotomy, BoundedSoFar):
            pieces = split_pieces(c, rho, window, dichotomy.n, budgets)
            span.set_attribute("forcing.pieces", len(pieces))
            tail = c.A.diff(FinSet.range(dichotomy.n))
            for piece, b, y in pieces:
                found = _try_envelope(c, b, tail.union(piece).union(b), y, phi, budgets)
                if found is not None:
                    span.set_attribute("forcing.source", "split")
                    return DecisionReport("exists", dichotomy, found[0], y=y, verdict=found[1])

        for b, y in window:
            for envelope in candidate_envelopes(c.A, b, budgets.window):
                found = _try_envelope(c, b, envelope, y, phi, budgets)
                if found is not None:
                    span.set_attribute("forcing.source", "candidates")
                    return DecisionReport("exists", dichotomy, found[0], y=y, verdict=found[1])
        return DecisionReport("unknown", dichotomy)


def pi2_decide(c: Condition, phi: Formula, budgets: Budgets | None = None) -> DecisionReport:
    budgets = budgets or Budgets()
    with tracer.start_as_current_span("pi2_decide") as span:
        window = decision_window(c, budgets)
        span.set_attribute("forcing.window", len(window))
        if not window:
            return DecisionReport("unknown", Unknown(0))

        rho = rho_submeasure(c, phi, window)
        target = max(budgets.threshold, len(window) + 1)
        dichotomy = unbounded_check(Meet(c.mu, rho), c.A, target, budgets.horizon, budgets.dp)
        span.set_attribute("forcing.dichotomy", dichotomy.kind)

        if isinstance(dichotomy, Witnessed):
            report = _forall_not(c, phi, rho, dichotomy, budgets)
        else:
            report = _exists(c, phi, rho, window, dichotomy, budgets)
        span.set_attribute("forcing.branch", report.branch)
        return report
