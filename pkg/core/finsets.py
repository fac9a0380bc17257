"""
Finite sets of naturals and finite binary strings.

Classes:
    FinSet:
        A coded finite set, stored as a strictly increasing tuple. The bitmask
        `code` is the content address used by every memo cache.
    BitString:
        A finite 0/1 string (an oracle prefix). `ones()` and `zeros()` split its
        domain into the positions carrying 1 and 0.

Both types are immutable and compare structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class FinSet:
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        previous = -1
        for e in self.elements:
            if not isinstance(e, int) or e <= previous:
                raise ValueError(f"FinSet elements must be strictly increasing naturals: {self.elements}")
            previous = e

    @classmethod
    def of(cls, items: Iterable[int] = ()) -> FinSet:
        return cls(tuple(sorted(set(items))))

    @classmethod
    def range(cls, start: int, stop: int | None = None) -> FinSet:
        if stop is None:
            start, stop = 0, start
        return cls(tuple(range(start, stop)))

    @classmethod
    def from_code(cls, code: int) -> FinSet:
        out = []
        i = 0
        while code:
            if code & 1:
                out.append(i)
            code >>= 1
            i += 1
        return cls(tuple(out))

    @cached_property
    def code(self) -> int:
        c = 0
        for e in self.elements:
            c |= 1 << e
        return c

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, n: object) -> bool:
        return isinstance(n, int) and n >= 0 and bool(self.code >> n & 1)

    def __bool__(self) -> bool:
        return bool(self.elements)

    def max(self) -> int | None:
        return self.elements[-1] if self.elements else None

    def min(self) -> int | None:
        return self.elements[0] if self.elements else None

    def union(self, other: Iterable[int]) -> FinSet:
        return FinSet.from_code(self.code | _code_of(other))

    def inter(self, other: Iterable[int]) -> FinSet:
        return FinSet.from_code(self.code & _code_of(other))

    def diff(self, other: Iterable[int]) -> FinSet:
        return FinSet.from_code(self.code & ~_code_of(other))

    def add(self, n: int) -> FinSet:
        return FinSet.from_code(self.code | 1 << n)

    def issubset(self, other: FinSet) -> bool:
        return self.code & ~other.code == 0

    def below(self, n: int) -> FinSet:
        return FinSet(tuple(e for e in self.elements if e < n))

    def subsets(self) -> Iterator[FinSet]:
        """All subsets, by size then lexicographically."""
        for k in range(len(self.elements) + 1):
            for combo in combinations(self.elements, k):
                yield FinSet(combo)

    def characteristic(self, length: int | None = None) -> BitString:
        if length is None:
            length = self.elements[-1] + 1 if self.elements else 0
        return BitString("".join("1" if i in self else "0" for i in range(length)))

    def describe(self) -> str:
        return "(fin" + "".join(f" {e}" for e in self.elements) + ")"

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _code_of(items: Iterable[int]) -> int:
    if isinstance(items, FinSet):
        return items.code
    c = 0
    for e in items:
        c |= 1 << e
    return c


EMPTY = FinSet()


@dataclass(frozen=True, order=True)
class BitString:
    bits: str = ""

    def __post_init__(self):
        if any(ch not in "01" for ch in self.bits):
            raise ValueError(f"BitString accepts only 0/1, got {self.bits!r}")

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return 1 if self.bits[i] == "1" else 0

    def __str__(self) -> str:
        return self.bits or "ε"

    def ones(self) -> FinSet:
        return FinSet(tuple(i for i, ch in enumerate(self.bits) if ch == "1"))

    def zeros(self) -> FinSet:
        return FinSet(tuple(i for i, ch in enumerate(self.bits) if ch == "0"))

    def prefix(self, n: int) -> BitString:
        return BitString(self.bits[:n])

    def extend(self, bits: str | int) -> BitString:
        return BitString(self.bits + str(bits))

    def is_prefix_of(self, other: BitString) -> bool:
        return other.bits.startswith(self.bits)

    def compatible(self, other: BitString) -> bool:
        return self.is_prefix_of(other) or other.is_prefix_of(self)

    def count_ones(self) -> int:
        return self.bits.count("1")
