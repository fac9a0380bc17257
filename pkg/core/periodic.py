"""
Eventually periodic infinite sets: the ground-model sets A, B, C, R of every
construction (envelopes of conditions, sets to decide, stabilizing classes).

Classes:
    PeriodicSet:
        prefix + period bit strings; membership is total and the boolean
        algebra is closed (result period length is the lcm of the inputs).

Functions:
    nat(), prog(a, d), fin(finset), periodic(prefix, period), empty()

All values are canonical: the period is the shortest repeating block and the
prefix is as short as possible, so structural equality is set equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator

from core.finsets import BitString, FinSet


@dataclass(frozen=True)
class PeriodicSet:
    prefix: str = ""
    period: str = "1"

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(ch not in "01" for ch in self.prefix + self.period):
            raise ValueError("prefix and period are 0/1 strings")

    @classmethod
    def canonical(cls, prefix: str, period: str) -> PeriodicSet:
        period = _shortest_block(period)
        while prefix and prefix[-1] == period[-1]:
            period = period[-1] + period[:-1]
            prefix = prefix[:-1]
        return cls(prefix, period)

    def member(self, n: int) -> bool:
        if n < len(self.prefix):
            return self.prefix[n] == "1"
        return self.period[(n - len(self.prefix)) % len(self.period)] == "1"

    def __contains__(self, n: object) -> bool:
        return isinstance(n, int) and n >= 0 and self.member(n)

    def is_infinite(self) -> bool:
        return "1" in self.period

    def bits(self, length: int) -> str:
        return "".join("1" if self.member(i) else "0" for i in range(length))

    def characteristic(self, length: int) -> BitString:
        return BitString(self.bits(length))

    # ---- Boolean algebra ----

    def _combine(self, other: PeriodicSet, op) -> PeriodicSet:
        start = max(len(self.prefix), len(other.prefix))
        p = lcm(len(self.period), len(other.period))
        prefix = "".join("1" if op(self.member(i), other.member(i)) else "0" for i in range(start))
        period = "".join(
            "1" if op(self.member(i), other.member(i)) else "0" for i in range(start, start + p)
        )
        return PeriodicSet.canonical(prefix, period)

    def union(self, other: PeriodicSet | FinSet) -> PeriodicSet:
        return self._combine(_lift(other), lambda x, y: x or y)

    def inter(self, other: PeriodicSet | FinSet) -> PeriodicSet:
        return self._combine(_lift(other), lambda x, y: x and y)

    def diff(self, other: PeriodicSet | FinSet) -> PeriodicSet:
        return self._combine(_lift(other), lambda x, y: x and not y)

    def complement(self) -> PeriodicSet:
        return self._combine(nat(), lambda x, y: y and not x)

    def issubset(self, other: PeriodicSet) -> bool:
        horizon = max(len(self.prefix), len(other.prefix)) + lcm(len(self.period), len(other.period))
        return all(other.member(i) for i in range(horizon) if self.member(i))

    def contains_finset(self, x: Iterable[int]) -> bool:
        return all(self.member(e) for e in x)

    # ---- Enumeration ----

    def restrict(self, n: int) -> FinSet:
        return FinSet(tuple(i for i in range(n) if self.member(i)))

    def elements(self, start: int = 0) -> Iterator[int]:
        """Members ≥ start in increasing order; infinite when the set is."""
        i = start
        horizon = max(len(self.prefix), start) + len(self.period)
        while self.is_infinite() or i < horizon:
            if self.member(i):
                yield i
            i += 1

    def first(self, k: int, start: int = 0) -> FinSet:
        out = []
        for e in self.elements(start):
            if len(out) == k:
                break
            out.append(e)
        return FinSet(tuple(out))

    def describe(self) -> str:
        return f'(periodic "{self.prefix}" "{self.period}")'

    def __str__(self) -> str:
        return self.describe()


def _shortest_block(period: str) -> str:
    n = len(period)
    for p in range(1, n + 1):
        if n % p == 0 and period[:p] * (n // p) == period:
            return period[:p]
    return period


def _lift(s: PeriodicSet | FinSet) -> PeriodicSet:
    return fin(s) if isinstance(s, FinSet) else s


# ---- Constructors ----

def nat() -> PeriodicSet:
    return PeriodicSet("", "1")


def empty() -> PeriodicSet:
    return PeriodicSet("", "0")


def prog(a: int, d: int) -> PeriodicSet:
    if d < 1:
        raise ValueError("progression step must be positive")
    return PeriodicSet.canonical("0" * a, "1" + "0" * (d - 1))


def fin(x: Iterable[int]) -> PeriodicSet:
    x = x if isinstance(x, FinSet) else FinSet.of(x)
    length = x.max() + 1 if x else 0
    return PeriodicSet.canonical(x.characteristic(length).bits, "0")


def periodic(prefix: str, period: str) -> PeriodicSet:
    return PeriodicSet.canonical(prefix, period)
