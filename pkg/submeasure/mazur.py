"""
The Mazur construction: from a sequence of trees T_0, T_1, ... to the least
submeasure whose finite-measure ideal contains every [T_j].

    C_0 = {∅}
    C_i = {x : max(x) < i, or x ⊆ ones(τ) for some τ ∈ T_j, j < i, |τ| = max(x)+1}
    θ(x) = least i with x ∈ C_i
    μ(x) = min over partitions z_1 ∪ ... ∪ z_k = x of θ(z_1) + ... + θ(z_k)

Functions:
    mazur_theta(family, x)
    mazur_eval(family, x, budget): subset DP over the partitions of x.
    mazur_partition(family, x, budget): an optimal partition.
    decompose(family, x, i): ≤ i pieces, each in C_i, when mazur_eval(x) ≤ i.

The family is finite here; trees past its end are empty, so only the
max(x) < i clause applies to them.
"""

from __future__ import annotations

from typing import Sequence

from config.settings import CACHE_ENTRIES, MAZUR_BUDGET
from core.errors import BudgetExceeded
from core.finsets import FinSet
from submeasure.trees import TreeSpec

_THETA: dict[tuple[str, int], int] = {}
_BEST: dict[tuple[str, int], int] = {}


def remember(cache: dict, key, value) -> None:
    """Store an exact value; a full cache is emptied first."""
    if len(cache) >= CACHE_ENTRIES:
        cache.clear()
    cache[key] = value


def family_key(family: Sequence[TreeSpec]) -> str:
    return "(" + " ".join(t.key for t in family) + ")"


def _theta_from(family: Sequence[TreeSpec], x: FinSet, start: int) -> int:
    m = x.max()
    for i in range(max(start, 1), m + 2):
        if m < i:
            return i
        j = i - 1
        if j < len(family) and family[j].covers(x):
            return i
    return m + 1


def mazur_theta(family: Sequence[TreeSpec], x: FinSet, start: int = 1) -> int:
    if not x:
        return 0
    key = (family_key(family), x.code)
    value = _THETA.get(key)
    if value is None:
        value = _theta_from(family, x, start)
        remember(_THETA, key, value)
    return value


def _subset_codes(x: FinSet) -> list[int]:
    """codes[mask] is the code of the subset of x selected by mask."""
    bits = [1 << e for e in x]
    codes = [0] * (1 << len(bits))
    for mask in range(1, len(codes)):
        low = mask & -mask
        codes[mask] = codes[mask ^ low] | bits[low.bit_length() - 1]
    return codes


def _check_budget(x: FinSet, budget: int | None) -> None:
    limit = MAZUR_BUDGET if budget is None else budget
    if len(x) > limit:
        raise BudgetExceeded(limit, len(x), "partition")


def _tables(family: Sequence[TreeSpec], x: FinSet) -> tuple[list[int], list[int], list[int]]:
    fkey = family_key(family)
    codes = _subset_codes(x)
    size = len(codes)
    theta = [0] * size
    best = [0] * size
    for mask in range(1, size):
        # θ is monotone, so no subset of mask can need a later tree than mask does
        start = 1
        rest = mask
        while rest:
            low = rest & -rest
            start = max(start, theta[mask ^ low])
            rest ^= low
        code = codes[mask]
        t = _THETA.get((fkey, code))
        if t is None:
            t = _theta_from(family, FinSet.from_code(code), start)
            remember(_THETA, (fkey, code), t)
        theta[mask] = t

        cached = _BEST.get((fkey, code))
        if cached is not None:
            best[mask] = cached
            continue
        value = t
        if t > 1:
            low = mask & -mask
            rest = mask ^ low
            sub = rest
            while True:
                piece = sub | low
                if piece != mask:
                    candidate = theta[piece] + best[mask ^ piece]
                    if candidate < value:
                        value = candidate
                if sub == 0:
                    break
                sub = (sub - 1) & rest
        best[mask] = value
        remember(_BEST, (fkey, code), value)
    return codes, theta, best


def mazur_eval(family: Sequence[TreeSpec], x: FinSet, budget: int | None = None) -> int:
    if not x:
        return 0
    cached = _BEST.get((family_key(family), x.code))
    if cached is not None:
        return cached
    _check_budget(x, budget)
    _, _, best = _tables(family, x)
    return best[-1]


def mazur_partition(family: Sequence[TreeSpec], x: FinSet, budget: int | None = None) -> list[FinSet]:
    if not x:
        return []
    _check_budget(x, budget)
    codes, theta, best = _tables(family, x)
    pieces = []
    mask = len(codes) - 1
    while mask:
        if best[mask] == theta[mask]:
            pieces.append(FinSet.from_code(codes[mask]))
            break
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        while True:
            piece = sub | low
            if piece != mask and theta[piece] + best[mask ^ piece] == best[mask]:
                break
            if sub == 0:
                raise RuntimeError("partition table is inconsistent")
            sub = (sub - 1) & rest
        pieces.append(FinSet.from_code(codes[piece]))
        mask ^= piece
    return pieces


def in_class(family: Sequence[TreeSpec], x: FinSet, i: int) -> bool:
    """x ∈ C_i"""
    return mazur_theta(family, x) <= i


def decompose(family: Sequence[TreeSpec], x: FinSet, i: int, budget: int | None = None) -> list[FinSet] | None:
    """At most i pieces of x, each in C_i, or None when mazur_eval(x) > i."""
    if mazur_eval(family, x, budget) > i:
        return None
    return mazur_partition(family, x, budget)


def clear_caches() -> None:
    _THETA.clear()
    _BEST.clear()
