"""
Witness names for Π⁰₃ sentences ∀w ∃y ψ(x̄, w, y), ψ Π⁰₁, below a condition.

R(τ, v̄, y) holds when τ ∈ tree(a0, A) and (a0 ∪ ones τ, A − zeros τ, μ)
forces ψ(v̄, y), checked by counterexample search at a fixed depth. The pairs
(τ_i, y_i) are enumerated by rank |τ_i| + y_i, shorter τ first within a rank,
so τ_i ⊆ τ_j and y_i ≤ y_j imply i ≤ j. F(τ, v̄) = y_i for the least i with
τ_i ⊆ τ and R(τ_i, v̄, y_i); only ranks ≤ |τ| are inspected, which makes F
monotone: every pair of smaller rank has its τ_i among the prefixes of τ.

The witness for the Π⁰₃ sentence pairs w into t and reads
W(v̄, w, 0) = F(v̄, w), W(v̄, w, t+1) = W^ψ_S(v̄, w, F(v̄, w), t).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from opentelemetry import trace

from core.finsets import BitString, FinSet
from core.periodic import PeriodicSet
from core.trees import tree_member
from formula.ast import Forall, Formula, Not, close, free_count
from formula.classes import SyntClass, classify, desugar
from formula.syntax import print_formula
from forcing.budgets import Budgets
from forcing.pi1 import counterexample, pi1_matrix
from names.base import Name
from skolem.witnesses import PairedWitness, witness_skolem

tracer = trace.get_tracer("forcing")


@dataclass(frozen=True)
class Sigma2Name(Name):
    """F(τ, v̄): the least forced y along τ, for the Π⁰₁ family ψ(v̄, y)."""

    a0: FinSet
    A: PeriodicSet
    psi: Formula
    arity: int
    depth: int
    bound: int

    def forced(self, sigma: BitString, vs: tuple[int, ...], y: int) -> bool:
        return _forced(self, sigma, vs, y)

    def query(self, tau, args):
        vs = self._check(args)
        for rank in range(len(tau) + 1):
            for length in range(rank + 1):
                y = rank - length
                if self.forced(tau.prefix(length), vs, y):
                    return y
        return None

    def describe(self):
        return (
            f"(sigma2 {self.a0.describe()} {self.A.describe()} {print_formula(self.psi)} "
            f"{self.arity} {self.depth} {self.bound})"
        )


@dataclass(frozen=True)
class Sigma2Witness(Name):
    """W(v̄, 0) = F(v̄), W(v̄, t+1) = inner(v̄, F(v̄), t)."""

    head: Name
    inner: Name

    @property
    def arity(self):
        return self.head.arity + 1

    def query(self, tau, args):
        *vs, t = self._check(args)
        y = self.head.query(tau, tuple(vs))
        if y is None or t == 0:
            return y
        return self.inner.query(tau, (*vs, y, t - 1))

    def describe(self):
        return f"(sigma2-witness {self.head.describe()} {self.inner.describe()})"


@lru_cache(maxsize=8192)
def _forced(name: Sigma2Name, sigma: BitString, vs: tuple[int, ...], y: int) -> bool:
    """(a0 ∪ ones σ, A − zeros σ, μ) forces ψ(v̄, y) up to the name's depth."""
    if not tree_member(name.a0, name.A, sigma):
        return False
    n, T = pi1_matrix(close(name.psi, (*vs, y)))
    stem = name.a0.union(sigma.ones())
    envelope = name.A.diff(sigma.zeros())
    depth = max(name.depth, len(sigma))
    return counterexample(stem, envelope, T, n, depth, name.bound) is None


def pi3_matrix(theta: Formula) -> Formula:
    """ψ for θ = ∀w ∃y ψ with ψ Π⁰₁ (or bounded)."""
    theta = desugar(theta)
    if not isinstance(theta, Forall):
        raise ValueError("a Π⁰₃ sentence here is ∀w ∃y ψ")
    body = theta.body
    if not (isinstance(body, Not) and isinstance(body.body, Forall) and isinstance(body.body.body, Not)):
        raise ValueError("a Π⁰₃ sentence here is ∀w ∃y ψ")
    psi = body.body.body.body
    if classify(psi) not in (SyntClass.BOUNDED, SyntClass.PI01):
        raise ValueError("ψ must be Π⁰₁")
    return psi


def pi3_witness(
    a0: FinSet,
    A: PeriodicSet,
    theta: Formula,
    budgets: Budgets | None = None,
    k: int | None = None,
) -> Name:
    """The unary-in-t witness name W(x̄, t) for θ(x̄) = ∀w ∃y ψ(x̄, w, y)."""
    budgets = budgets or Budgets()
    psi = pi3_matrix(theta)
    k = free_count(desugar(theta)) if k is None else k
    with tracer.start_as_current_span("pi3_witness") as span:
        span.set_attribute("forcing.parameters", k)
        head = Sigma2Name(a0, A, psi, k + 1, budgets.depth, budgets.bound)
        inner = witness_skolem(psi, k + 2)
        return PairedWitness(Sigma2Witness(head, inner))
