"""
Budgeted Π⁰₁ forcing.

(a, A, μ) ⊩ ∀ū θ(ū) with θ bounded holds exactly when no τ ∈ tree(a, A) and
arguments ū make the compiled matrix T_θ(ū) converge to a nonzero value on τ.
pi1_forces searches that counterexample space: every τ ∈ tree(a, A) of
length `depth` and every ū below `bound`. Names are monotone, so strings of
the full depth subsume their prefixes.

Functions:
    pi1_matrix(phi): (number of universals, compiled matrix name)
    pi1_forces(c, phi, budgets): Refuted(τ, ū, value) or ForcedUpTo(depth, bound)
    recheck_refuted(c, phi, verdict): definition-level re-check of a refutation
    forces_skolem(c, theta, W): pi1_forces on the Π⁰₁ normal form of θ_S(W)
    refutes_herbrand(c, theta, W): pi1_forces on ¬θ_H(W) = (¬θ)_S(W); ForcedUpTo
        means c forces the Herbrand form to fail, Refuted gives a τ realizing it
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Container

from opentelemetry import trace

from core.finsets import BitString, FinSet
from core.trees import tree_strings
from formula.ast import Formula, Not, close, fill_hole, free_count
from formula.classes import desugar, is_bounded, strip_foralls
from forcing.budgets import Budgets
from forcing.conditions import Condition
from names.base import Name
from skolem.compile import compile_bounded
from skolem.templates import pi1_normal_form, skolemize

tracer = trace.get_tracer("forcing")


@dataclass(frozen=True)
class ForcedUpTo:
    depth: int
    bound: int

    kind = "forced"

    def payload(self) -> dict:
        return {"kind": self.kind, "depth": self.depth, "bound": self.bound}


@dataclass(frozen=True)
class Refuted:
    tau: BitString
    args: tuple[int, ...]
    value: int

    kind = "refuted"

    def payload(self) -> dict:
        return {"kind": self.kind, "tau": self.tau.bits, "args": list(self.args), "value": self.value}


Pi1Verdict = ForcedUpTo | Refuted


@lru_cache(maxsize=512)
def pi1_matrix(phi: Formula) -> tuple[int, Name]:
    phi = desugar(phi)
    if free_count(phi):
        raise ValueError("close the formula before forcing it")
    n, matrix = strip_foralls(phi)
    if not is_bounded(matrix):
        raise ValueError("pi1_forces needs ∀ū θ with θ bounded")
    return n, compile_bounded(matrix, n)


def counterexample(a: FinSet, A: Container[int], T: Name, n: int, depth: int, bound: int) -> Refuted | None:
    for tau in tree_strings(a, A, depth):
        for args in product(range(bound), repeat=n):
            z = T.query(tau, args)
            if z is not None and z != 0:
                return Refuted(tau, args, z)
    return None


def pi1_forces(
    c: Condition,
    phi: Formula,
    budgets: Budgets | None = None,
    env: tuple[int, ...] = (),
) -> Pi1Verdict:
    budgets = budgets or Budgets()
    if env:
        phi = close(phi, env)
    n, T = pi1_matrix(phi)
    with tracer.start_as_current_span("pi1_forces") as span:
        span.set_attribute("forcing.depth", budgets.depth)
        span.set_attribute("forcing.universals", n)
        found = counterexample(c.a, c.A, T, n, budgets.depth, budgets.bound)
        verdict = found or ForcedUpTo(budgets.depth, budgets.bound)
        span.set_attribute("forcing.verdict", verdict.kind)
        return verdict


def recheck_refuted(c: Condition, phi: Formula, verdict: Refuted) -> bool:
    n, T = pi1_matrix(desugar(phi))
    if len(verdict.args) != n or not c.tree_member(verdict.tau):
        return False
    z = T.query(verdict.tau, verdict.args)
    return z is not None and z != 0 and z == verdict.value


def skolem_sentence(theta: Formula, witness: Name) -> Formula:
    """The Π⁰₁ sentence ∀u ψ(u) equivalent to θ_S(W)."""
    return fill_hole(pi1_normal_form(skolemize(theta)), witness)


def forces_skolem(c: Condition, theta: Formula, witness: Name, budgets: Budgets | None = None) -> Pi1Verdict:
    with tracer.start_as_current_span("forces_skolem"):
        return pi1_forces(c, skolem_sentence(theta, witness), budgets)


def refutes_herbrand(c: Condition, theta: Formula, witness: Name, budgets: Budgets | None = None) -> Pi1Verdict:
    with tracer.start_as_current_span("refutes_herbrand"):
        return pi1_forces(c, skolem_sentence(Not(theta), witness), budgets)
