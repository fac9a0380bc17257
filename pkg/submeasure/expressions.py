"""
Submeasure expressions: integer-valued lower semicontinuous submeasures given by
their values on finite sets.

Constructors:
    Card()              |x|
    Const(n)            n on every nonempty set
    Join(μ, ν)          pointwise max
    Meet(μ, ν)          min over splits x = y ∪ z of μ(y) + ν(z), by subset DP
    Mazur(family)       the Mazur submeasure of a tree family
    IMeet(parts, depth) ⋀_{j<depth} (μ_j ∨ j), truncated; parts past the list repeat the last one
    Dom(growth)         Mazur submeasure of the sets whose enumeration dominates the growth function

Evaluation is memoized per (printed expression, set code), so structurally equal
expressions share entries. The caches only ever hold exact values and are
emptied once they reach CACHE_ENTRIES.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property

from config.settings import DP_BUDGET, IMEET_DEPTH
from core.errors import BudgetExceeded
from core.finsets import FinSet
from submeasure.mazur import _subset_codes, clear_caches, mazur_eval, remember
from submeasure.trees import DomEnum, Growth, TreeSpec

_CACHE: dict[tuple[str, int], int] = {}


class Submeasure(ABC):
    @abstractmethod
    def describe(self) -> str:
        ...

    @abstractmethod
    def _compute(self, x: FinSet, budget: int | None) -> int:
        ...

    def lower_bound(self) -> int:
        """A lower bound on the value of every nonempty set."""
        return 0

    @cached_property
    def key(self) -> str:
        return self.describe()

    def eval(self, x: FinSet, budget: int | None = None) -> int:
        if not x:
            return 0
        entry = (self.key, x.code)
        value = _CACHE.get(entry)
        if value is None:
            value = self._compute(x, budget)
            remember(_CACHE, entry, value)
        return value

    def _value(self, code: int, budget: int | None) -> int:
        if code == 0:
            return 0
        value = _CACHE.get((self.key, code))
        if value is None:
            value = self.eval(FinSet.from_code(code), budget)
        return value

    def __str__(self) -> str:
        return self.key


@dataclass(frozen=True)
class Card(Submeasure):
    def _compute(self, x, budget):
        return len(x)

    def _value(self, code, budget):
        return code.bit_count()

    def lower_bound(self):
        return 1

    def describe(self):
        return "(card)"


@dataclass(frozen=True)
class Const(Submeasure):
    n: int

    def _compute(self, x, budget):
        return self.n

    def _value(self, code, budget):
        return self.n if code else 0

    def lower_bound(self):
        return self.n

    def describe(self):
        return f"(const {self.n})"


@dataclass(frozen=True)
class Join(Submeasure):
    left: Submeasure
    right: Submeasure

    def _compute(self, x, budget):
        return max(self.left.eval(x, budget), self.right.eval(x, budget))

    def lower_bound(self):
        return max(self.left.lower_bound(), self.right.lower_bound())

    def describe(self):
        return f"(join {self.left.describe()} {self.right.describe()})"


@dataclass(frozen=True)
class Meet(Submeasure):
    left: Submeasure
    right: Submeasure

    def _compute(self, x, budget):
        left, right = self.left, self.right
        if isinstance(left, Const):
            left, right = right, left
        if isinstance(right, Const):
            return min(left.eval(x, budget), right.n)

        # splitting off a nonempty part costs at least that side's lower bound
        lv = left.eval(x, budget)
        if lv <= right.lower_bound():
            return lv
        rv = right.eval(x, budget)
        if rv <= left.lower_bound():
            return rv

        limit = DP_BUDGET if budget is None else budget
        if len(x) > limit:
            raise BudgetExceeded(limit, len(x), "meet")
        codes = _subset_codes(x)
        full = codes[-1]
        best = min(lv, rv)
        for code in codes[1:-1]:
            candidate = left._value(code, budget) + right._value(full ^ code, budget)
            if candidate < best:
                best = candidate
        return best

    def lower_bound(self):
        return min(self.left.lower_bound(), self.right.lower_bound())

    def describe(self):
        return f"(meet {self.left.describe()} {self.right.describe()})"


@dataclass(frozen=True)
class Mazur(Submeasure):
    family: tuple[TreeSpec, ...]

    def _compute(self, x, budget):
        return mazur_eval(self.family, x, budget)

    def lower_bound(self):
        return 1

    def describe(self):
        return "(mazur" + "".join(f" {t.describe()}" for t in self.family) + ")"


@dataclass(frozen=True)
class Dom(Submeasure):
    growth: Growth

    @cached_property
    def family(self) -> tuple[TreeSpec, ...]:
        return (DomEnum(self.growth),)

    def _compute(self, x, budget):
        return mazur_eval(self.family, x, budget)

    def lower_bound(self):
        return 1

    def describe(self):
        return f"(dom {self.growth.describe()})"


@dataclass(frozen=True)
class IMeet(Submeasure):
    parts: tuple[Submeasure, ...]
    depth: int = IMEET_DEPTH

    def __post_init__(self):
        if not self.parts or self.depth < 1:
            raise ValueError("imeet needs at least one part and a positive depth")

    def part(self, j: int) -> Submeasure:
        return self.parts[min(j, len(self.parts) - 1)]

    @cached_property
    def expansion(self) -> Submeasure:
        chain = self.part(0)
        for j in range(1, self.depth):
            chain = Meet(chain, Join(self.part(j), Const(j)))
        return chain

    def _compute(self, x, budget):
        return self.expansion.eval(x, budget)

    def lower_bound(self):
        return self.expansion.lower_bound()

    def describe(self):
        return f"(imeet {self.depth}" + "".join(f" {m.describe()}" for m in self.parts) + ")"


def join(left: Submeasure, right: Submeasure) -> Submeasure:
    """Join with constants folded: c ∨ d = max(c, d) and 0 ∨ μ = μ."""
    if isinstance(left, Const) and isinstance(right, Const):
        return Const(max(left.n, right.n))
    if isinstance(right, Const) and right.n == 0:
        return left
    if isinstance(left, Const) and left.n == 0:
        return right
    return Join(left, right)


def sup_measure() -> Mazur:
    """x ↦ max(x) + 1: the Mazur submeasure of no trees, whose finite sets are the finite ones."""
    return Mazur(())


def meet_all(parts: list[Submeasure]) -> Submeasure:
    if not parts:
        raise ValueError("meet of no submeasures")
    result = parts[0]
    for part in parts[1:]:
        result = Meet(result, part)
    return result


def clear_cache() -> None:
    _CACHE.clear()
    clear_caches()
