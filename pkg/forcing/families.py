"""
Π⁰₁ families φ(x̄, w) = ∀ū θ(x̄, w, ū) and the closed classes they induce.

A family is a formula whose last free variable is the witness slot w. Fixing
x̄ leaves a one-variable family; its matrix compiles to a name with arguments
(w, ū), the layout Pi1Hat trees expect.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from core.finsets import FinSet
from core.periodic import PeriodicSet, prog
from formula.ast import Formula, close, fix_leading, free_count
from formula.classes import desugar, is_bounded, strip_foralls
from names.base import Name
from skolem.compile import compile_bounded


@lru_cache(maxsize=256)
def family_matrix(phi: Formula) -> tuple[int, Name]:
    """(number of universals, T(w, ū)) for a family with at most one free variable."""
    phi = desugar(phi)
    if free_count(phi) > 1:
        raise ValueError("fix the parameters before compiling the family")
    n, matrix = strip_foralls(phi)
    if not is_bounded(matrix):
        raise ValueError("a Π⁰₁ family needs ∀ū θ with θ bounded")
    return n, compile_bounded(matrix, n + 1)


def fix_parameters(phi: Formula, xs: tuple[int, ...]) -> Formula:
    """φ(x̄, w) with x̄ substituted, leaving only w free."""
    k = max(free_count(phi), len(xs) + 1)
    return fix_leading(desugar(phi), xs, k)


def instance(phi: Formula, y: int) -> Formula:
    """The sentence φ(y); a family without a free w is returned unchanged."""
    phi = desugar(phi)
    if free_count(phi) == 0:
        return phi
    if free_count(phi) > 1:
        raise ValueError("fix the parameters before instantiating the family")
    return close(phi, (y,))


def stem_window(a: FinSet, A: PeriodicSet, size: int) -> list[FinSet]:
    """a ∪ s for every s ⊆ the first `size` elements of A − a, by size then lex."""
    free = A.diff(a).first(size)
    out = []
    for r in range(len(free) + 1):
        for chosen in combinations(tuple(free), r):
            out.append(a.union(chosen))
    return out


MAX_RESIDUE_MODULUS = 4


def candidate_envelopes(A: PeriodicSet, b: FinSet, window: int) -> Iterator[PeriodicSet]:
    """A, then its tails A − [0, m), then A ∩ (r mod d) for d ≤ 4; each joined with b."""
    yield A
    for m in range(1, window + 1):
        yield A.diff(FinSet.range(m)).union(b)
    for d in range(2, MAX_RESIDUE_MODULUS + 1):
        for r in range(d):
            yield A.inter(prog(r, d)).union(b)
