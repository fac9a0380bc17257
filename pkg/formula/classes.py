"""
Abbreviation removal and syntactic classification.

    φ ∨ ψ   ≡ ¬(¬φ ∧ ¬ψ)
    ∃v φ    ≡ ¬∀v ¬φ
    φ → ψ   ≡ ¬(φ ∧ ¬ψ)
    φ ↔ ψ   ≡ (φ → ψ) ∧ (ψ → φ)

classify() counts quantifier alternations on desugared formulas and answers
Other whenever the shape is not one it can place with certainty.
"""

from __future__ import annotations

from enum import Enum

from formula.ast import And, Atom, BForall, Exists, Forall, Formula, Iff, Implies, Not, Or


class SyntClass(Enum):
    BOUNDED = "bounded"
    PI01 = "pi01"
    SIGMA01 = "sigma01"
    PI02 = "pi02"
    SIGMA02 = "sigma02"
    PI03 = "pi03"
    OTHER = "other"


def desugar(phi: Formula) -> Formula:
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Not):
        return Not(desugar(phi.body))
    if isinstance(phi, And):
        return And(desugar(phi.left), desugar(phi.right))
    if isinstance(phi, Forall):
        return Forall(phi.var, desugar(phi.body))
    if isinstance(phi, BForall):
        return BForall(phi.var, phi.bound, desugar(phi.body))
    if isinstance(phi, Or):
        return Not(And(Not(desugar(phi.left)), Not(desugar(phi.right))))
    if isinstance(phi, Exists):
        return Not(Forall(phi.var, Not(desugar(phi.body))))
    if isinstance(phi, Implies):
        return Not(And(desugar(phi.left), Not(desugar(phi.right))))
    if isinstance(phi, Iff):
        left, right = desugar(phi.left), desugar(phi.right)
        return And(Not(And(left, Not(right))), Not(And(right, Not(left))))
    raise TypeError(f"not a formula: {phi!r}")


def is_bounded(phi: Formula) -> bool:
    if isinstance(phi, Atom):
        return True
    if isinstance(phi, Not):
        return is_bounded(phi.body)
    if isinstance(phi, (And, Or, Implies, Iff)):
        return is_bounded(phi.left) and is_bounded(phi.right)
    if isinstance(phi, BForall):
        return is_bounded(phi.body)
    return False


# (level, kind) with kind "pi" or "sigma"; level 0 is bounded
_Level = tuple[int, str]

_NAMES = {
    (1, "pi"): SyntClass.PI01,
    (1, "sigma"): SyntClass.SIGMA01,
    (2, "pi"): SyntClass.PI02,
    (2, "sigma"): SyntClass.SIGMA02,
    (3, "pi"): SyntClass.PI03,
}


def _level(phi: Formula) -> _Level | None:
    if is_bounded(phi):
        return (0, "pi")
    if isinstance(phi, Not):
        inner = _level(phi.body)
        if inner is None:
            return None
        return (inner[0], "sigma" if inner[1] == "pi" else "pi")
    if isinstance(phi, Forall):
        inner = _level(phi.body)
        if inner is None:
            return None
        n, kind = inner
        if n == 0:
            return (1, "pi")
        return (n, "pi") if kind == "pi" else (n + 1, "pi")
    if isinstance(phi, And):
        left, right = _level(phi.left), _level(phi.right)
        if left is None or right is None:
            return None
        if left[0] == 0:
            return right if right[0] else (0, "pi")
        if right[0] == 0 or left == right:
            return left
        if left[1] == right[1]:
            return max(left, right)
        # mixed kinds: the strictly higher level absorbs the lower one
        if left[0] != right[0]:
            return max(left, right)
        return None
    return None


def classify(phi: Formula) -> SyntClass:
    """Class of a desugared formula; abbreviations are removed first."""
    phi = desugar(phi)
    level = _level(phi)
    if level is None:
        return SyntClass.OTHER
    if level[0] == 0:
        return SyntClass.BOUNDED
    return _NAMES.get(level, SyntClass.OTHER)


# ---- Shape accessors ----

def strip_foralls(phi: Formula) -> tuple[int, Formula]:
    """Number of leading unbounded universals and the formula under them."""
    count = 0
    while isinstance(phi, Forall):
        phi = phi.body
        count += 1
    return count, phi


def sigma1_matrix(phi: Formula) -> Formula | None:
    """θ when phi is ¬∀w¬θ with θ bounded, else None."""
    if (
        isinstance(phi, Not)
        and isinstance(phi.body, Forall)
        and isinstance(phi.body.body, Not)
        and is_bounded(phi.body.body.body)
    ):
        return phi.body.body.body
    return None
