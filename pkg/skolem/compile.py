"""
Compilation of bounded formulas into names whose zero set is the truth set.

    T(F(v̄) = F′(v̄′)) = |F(v̄) − F′(v̄′)|
    T(¬ψ)            = 1 ∸ T(ψ)
    T(ψ ∧ θ)         = T(ψ) + T(θ)
    T(∀w ≤ F(v̄) ψ)   = Σ_{w ≤ F(v̄)} T(ψ)(v̄, w)

T_φ takes the free variables v_0, ..., v_{k-1} of φ in order. On every oracle
prefix where it is defined, T_φ(x̄) = 0 exactly when φ(x̄) is true.
"""

from __future__ import annotations

from formula.ast import And, App, Atom, BForall, Formula, HoleApp, Not, Term, Var, free_count
from formula.classes import desugar, is_bounded
from names.base import Name
from names.combinators import BoundedSum, Canonical, Superpose, proj_name
from names.ground import binary, one_minus

_ABSDIFF = Canonical(binary("absdiff"))
_PLUS = Canonical(binary("+"))
_ONE_MINUS = Canonical(one_minus())


def term_name(term: Term, k: int) -> Name:
    """The k-ary name computing a term whose variables are among v_0..v_{k-1}."""
    if isinstance(term, Var):
        if term.index >= k:
            raise ValueError(f"variable #{term.index} escapes {k} free variables")
        return proj_name(k - 1 - term.index, k)
    if isinstance(term, App):
        inner = tuple(term_name(a, k) for a in term.args)
        return Superpose(term.name, inner, k)
    if isinstance(term, HoleApp):
        raise ValueError("fill the Skolem hole before compiling")
    raise TypeError(f"not a term: {term!r}")


def compile_bounded(phi: Formula, k: int | None = None) -> Name:
    phi = desugar(phi)
    if not is_bounded(phi):
        raise ValueError("only bounded formulas compile to names")
    if k is None:
        k = free_count(phi)
    return _compile(phi, k)


def _compile(phi: Formula, k: int) -> Name:
    if isinstance(phi, Atom):
        return Superpose(_ABSDIFF, (term_name(phi.left, k), term_name(phi.right, k)), k)
    if isinstance(phi, Not):
        return Superpose(_ONE_MINUS, (_compile(phi.body, k),), k)
    if isinstance(phi, And):
        return Superpose(_PLUS, (_compile(phi.left, k), _compile(phi.right, k)), k)
    if isinstance(phi, BForall):
        return BoundedSum(term_name(phi.bound, k), _compile(phi.body, k + 1))
    raise TypeError(f"not a bounded formula: {phi!r}")
