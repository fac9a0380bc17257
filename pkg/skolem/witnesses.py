"""
Witness names for Skolemized and Herbrandized formulas.

For a formula θ with free variables v̄ (k of them) the witnesses are names
W(v̄, t) of arity k+1; λt W(x̄, t) is what fills the hole of θ_S or θ_H.

Bounded θ (witness_bounded returns the pair (W_S, W_H)):
    atomic      both identically 0
    ¬φ          W_S = φ's W_H, W_H = φ's W_S
    φ ∧ ψ       W_S(v̄, 2t+i) = φ's W_S(v̄,t) for i = 0, ψ's for i = 1
                W_H = φ's W_H where T_φ(v̄) ≠ 0, ψ's W_H where T_φ(v̄) = 0
    ∀w≤F φ      W_S(v̄, t) = φ's W_S(v̄, fst t, ⌊snd t / 2⌋) if fst t ≤ F(v̄), else 0
                W_H(v̄, 0) = Σ_{w≤F(v̄)} U(v̄, w) with U(v̄, w) = 1 ∸ Σ_{u≤w} T_φ(v̄, u),
                the first failing w (or F(v̄)+1); W_H(v̄, t+1) continues with φ's
                W_H at that w, or is 0 when nothing fails.

Π⁰₁ and Π⁰₂ formulas pair the leading universal into t; a Σ⁰₁ formula ∃w θ
finds its least witness by the same U sum, scanned up to |τ| on the prefix τ.
"""

from __future__ import annotations

from dataclasses import dataclass

from opentelemetry import trace

from core.finsets import BitString
from core.pairing import fst, snd
from formula.ast import And, Atom, BForall, Forall, Formula, Not, free_count
from formula.classes import desugar, is_bounded, sigma1_matrix
from names.base import Args, Name
from names.combinators import Superpose, const_name, proj_name
from skolem.compile import compile_bounded, term_name

tracer = trace.get_tracer("skolem")


# ---- Witness name constructors ----

@dataclass(frozen=True)
class ParitySplit(Name):
    even: Name
    odd: Name

    @property
    def arity(self):
        return self.even.arity

    def query(self, tau, args):
        *vs, t = self._check(args)
        child = self.even if t % 2 == 0 else self.odd
        return child.query(tau, (*vs, t // 2))

    def describe(self):
        return f"(parity {self.even.describe()} {self.odd.describe()})"


@dataclass(frozen=True)
class SelectByTest(Name):
    """nonzero(v̄, t) where test(v̄) ≠ 0, zero(v̄, t) where test(v̄) = 0."""

    test: Name
    nonzero: Name
    zero: Name

    @property
    def arity(self):
        return self.nonzero.arity

    def query(self, tau, args):
        *vs, t = self._check(args)
        z = self.test.query(tau, tuple(vs))
        if z is None:
            return None
        return (self.nonzero if z != 0 else self.zero).query(tau, (*vs, t))

    def describe(self):
        return f"(select {self.test.describe()} {self.nonzero.describe()} {self.zero.describe()})"


@dataclass(frozen=True)
class BoundedForallS(Name):
    bound: Name
    inner: Name

    @property
    def arity(self):
        return self.bound.arity + 1

    def query(self, tau, args):
        *vs, t = self._check(args)
        n = self.bound.query(tau, tuple(vs))
        if n is None:
            return None
        w = fst(t)
        if w > n:
            return 0
        return self.inner.query(tau, (*vs, w, snd(t) // 2))

    def describe(self):
        return f"(ball-s {self.bound.describe()} {self.inner.describe()})"


def _least_failure(test: Name, tau: BitString, vs: Args, limit: int) -> int | None:
    """Σ_{w≤limit} (1 ∸ Σ_{u≤w} test(v̄, u)); None as soon as a test value is undefined."""
    running = 0
    total = 0
    for w in range(limit + 1):
        z = test.query(tau, (*vs, w))
        if z is None:
            return None
        running += z
        if running == 0:
            total += 1
    return total


@dataclass(frozen=True)
class BoundedForallH(Name):
    bound: Name
    test: Name
    inner: Name

    @property
    def arity(self):
        return self.bound.arity + 1

    def head(self, tau: BitString, vs: Args) -> tuple[int, int] | None:
        n = self.bound.query(tau, vs)
        if n is None:
            return None
        found = _least_failure(self.test, tau, vs, n)
        if found is None:
            return None
        return found, n

    def query(self, tau, args):
        *vs, t = self._check(args)
        found = self.head(tau, tuple(vs))
        if found is None:
            return None
        w, n = found
        if t == 0:
            return w
        if w > n:
            return 0
        return self.inner.query(tau, (*vs, w, t - 1))

    def describe(self):
        return f"(ball-h {self.bound.describe()} {self.test.describe()} {self.inner.describe()})"


@dataclass(frozen=True)
class PairedWitness(Name):
    """W(v̄, t) = inner(v̄, fst t, snd t)."""

    inner: Name

    @property
    def arity(self):
        return self.inner.arity - 1

    def query(self, tau, args):
        *vs, t = self._check(args)
        return self.inner.query(tau, (*vs, fst(t), snd(t)))

    def describe(self):
        return f"(paired {self.inner.describe()})"


@dataclass(frozen=True)
class Sigma1Witness(Name):
    """Least witness of ∃w θ(v̄, w) at t = 0, θ's Skolem witness after it.

    `refuter` is T_¬θ; W(v̄, 0) = y once some s ≤ |τ| has y < s and
    y = Σ_{w≤s} (1 ∸ Σ_{u≤w} T_¬θ(v̄, u))."""

    refuter: Name
    inner: Name

    @property
    def arity(self):
        return self.refuter.arity

    def head(self, tau: BitString, vs: Args) -> int | None:
        running = 0
        total = 0
        for s in range(len(tau) + 1):
            z = self.refuter.query(tau, (*vs, s))
            if z is None:
                return None
            running += z
            if running == 0:
                total += 1
            if total < s:
                return total
        return None

    def query(self, tau, args):
        *vs, t = self._check(args)
        y = self.head(tau, tuple(vs))
        if y is None or t == 0:
            return y
        return self.inner.query(tau, (*vs, y, t - 1))

    def describe(self):
        return f"(least {self.refuter.describe()} {self.inner.describe()})"


# ---- Construction ----

def _note(trace_lines: list[str] | None, depth: int, text: str) -> None:
    if trace_lines is not None:
        trace_lines.append("  " * depth + text)


def _zero(k: int) -> Name:
    return const_name(0, k + 1)


def _bounded(theta: Formula, k: int, lines, depth: int) -> tuple[Name, Name]:
    if isinstance(theta, Atom):
        _note(lines, depth, "atomic: both witnesses 0")
        return _zero(k), _zero(k)
    if isinstance(theta, Not):
        _note(lines, depth, "negation: swap S and H")
        s, h = _bounded(theta.body, k, lines, depth + 1)
        return h, s
    if isinstance(theta, And):
        _note(lines, depth, "conjunction: S by parity, H by the left test")
        ls, lh = _bounded(theta.left, k, lines, depth + 1)
        rs, rh = _bounded(theta.right, k, lines, depth + 1)
        return ParitySplit(ls, rs), SelectByTest(compile_bounded(theta.left, k), lh, rh)
    if isinstance(theta, BForall):
        _note(lines, depth, f"bounded universal {theta.var}: S by pairs, H by first failure")
        bound = term_name(theta.bound, k)
        s, h = _bounded(theta.body, k + 1, lines, depth + 1)
        return BoundedForallS(bound, s), BoundedForallH(bound, compile_bounded(theta.body, k + 1), h)
    raise ValueError("witness_bounded needs a bounded formula")


def witness_bounded(theta: Formula, k: int | None = None, trace_lines: list[str] | None = None) -> tuple[Name, Name]:
    theta = desugar(theta)
    if not is_bounded(theta):
        raise ValueError("witness_bounded needs a bounded formula")
    k = free_count(theta) if k is None else k
    with tracer.start_as_current_span("witness_bounded"):
        return _bounded(theta, k, trace_lines, 0)


def _skolem_witness(phi: Formula, k: int, lines, depth: int) -> Name:
    if is_bounded(phi):
        return _bounded(phi, k, lines, depth)[0]
    if isinstance(phi, Forall):
        _note(lines, depth, f"universal {phi.var}: pair (w, t)")
        return PairedWitness(_skolem_witness(phi.body, k + 1, lines, depth + 1))
    theta = sigma1_matrix(phi)
    if theta is not None:
        _note(lines, depth, "existential: least witness, then the body's S witness")
        inner = _bounded(theta, k + 1, lines, depth + 1)[0]
        return Sigma1Witness(compile_bounded(Not(theta), k + 1), inner)
    raise ValueError("no Skolem witness for this shape (bounded, Π⁰₁, Σ⁰₁ or Π⁰₂ expected)")


def witness_pi1(phi: Formula, k: int | None = None, trace_lines: list[str] | None = None) -> Name:
    phi = desugar(phi)
    if not isinstance(phi, Forall):
        raise ValueError("witness_pi1 needs ∀w θ")
    k = free_count(phi) if k is None else k
    with tracer.start_as_current_span("witness_pi1"):
        return _skolem_witness(phi, k, trace_lines, 0)


def witness_sigma1(phi: Formula, k: int | None = None, trace_lines: list[str] | None = None) -> Name:
    phi = desugar(phi)
    if sigma1_matrix(phi) is None:
        raise ValueError("witness_sigma1 needs ∃w θ with θ bounded")
    k = free_count(phi) if k is None else k
    with tracer.start_as_current_span("witness_sigma1"):
        return _skolem_witness(phi, k, trace_lines, 0)


def witness_skolem(phi: Formula, k: int | None = None, trace_lines: list[str] | None = None) -> Name:
    """Skolem witness for any bounded, Π⁰₁, Σ⁰₁ or Π⁰₂ formula."""
    phi = desugar(phi)
    k = free_count(phi) if k is None else k
    with tracer.start_as_current_span("witness_skolem"):
        return _skolem_witness(phi, k, trace_lines, 0)


def uniformize_sigma1(phi: Formula, k: int | None = None) -> Name:
    """For φ(v̄, w) with φ bounded: the name v̄ ↦ least w with φ(v̄, w)."""
    phi = desugar(phi)
    if not is_bounded(phi):
        raise ValueError("uniformize_sigma1 needs a bounded matrix")
    k = (max(free_count(phi), 1) if k is None else k) - 1
    exists = Not(Forall("w", Not(phi)))
    witness = _skolem_witness(exists, k, None, 0)
    inner = tuple(proj_name(i, k) for i in range(k)) + (const_name(0, k),)
    return Superpose(witness, inner, k)
