"""
Names that read the oracle: the generic real's characteristic function and
enumeration, finite Turing tables, and the slice views of a unary name used by
Skolem witness plumbing.
"""

from __future__ import annotations

from dataclasses import dataclass

from core.errors import InconsistentTable
from core.finsets import BitString
from core.pairing import pair
from names.base import Name


@dataclass(frozen=True)
class GenericChi(Name):
    arity: int = 1

    def query(self, tau, args):
        (x,) = self._check(args)
        return tau[x] if x < len(tau) else None

    def describe(self):
        return "(chi)"


@dataclass(frozen=True)
class GenericEnum(Name):
    """n ↦ position of the (n+1)-st 1 of the oracle, once it has appeared."""

    arity: int = 1

    def query(self, tau, args):
        (n,) = self._check(args)
        seen = -1
        for i, bit in enumerate(tau.bits):
            if bit == "1":
                seen += 1
                if seen == n:
                    return i
        return None

    def describe(self):
        return "(enum)"


Entry = tuple[BitString, int, int]


@dataclass(frozen=True)
class TuringTable(Name):
    """Finite functional: (pattern, x, y) answers y at x once pattern ⊆ tau."""

    entries: tuple[Entry, ...]
    arity: int = 1

    def __post_init__(self):
        for i, (p, x, y) in enumerate(self.entries):
            for q, x2, y2 in self.entries[i + 1:]:
                if x == x2 and y != y2 and p.compatible(q):
                    raise InconsistentTable(str(p), str(q), x)

    @classmethod
    def of(cls, entries) -> TuringTable:
        return cls(tuple((e[0] if isinstance(e[0], BitString) else BitString(e[0]), e[1], e[2])
                         for e in entries))

    def query(self, tau, args):
        (x,) = self._check(args)
        for p, x2, y in self.entries:
            if x2 == x and p.is_prefix_of(tau):
                return y
        return None

    def patterns_for(self, x: int) -> list[tuple[BitString, int]]:
        return [(p, y) for p, x2, y in self.entries if x2 == x]

    def arguments(self) -> list[int]:
        return sorted({x for _, x, _ in self.entries})

    def describe(self):
        body = " ".join(f'("{p.bits}" {x} {y})' for p, x, y in self.entries)
        return f"(table ({body}))"


SLICE_KINDS = ("even", "odd", "shift", "pairfix", "head")


@dataclass(frozen=True)
class Slice(Name):
    """even: t ↦ W(2t); odd: t ↦ W(2t+1); pairfix(w): t ↦ W(⟨w,t⟩);
    shift: t ↦ W(t+1); head: W(0) as a nullary name."""

    child: Name
    kind: str
    w: int | None = None

    def __post_init__(self):
        if self.child.arity != 1:
            raise ValueError("slices apply to unary names")
        if self.kind not in SLICE_KINDS:
            raise ValueError(f"unknown slice kind {self.kind}")
        if (self.kind == "pairfix") != (self.w is not None):
            raise ValueError("pairfix, and only pairfix, takes a fixed first coordinate")

    @property
    def arity(self):
        return 0 if self.kind == "head" else 1

    def index(self, t: int) -> int:
        if self.kind == "even":
            return 2 * t
        if self.kind == "odd":
            return 2 * t + 1
        if self.kind == "shift":
            return t + 1
        if self.kind == "pairfix":
            return pair(self.w, t)
        return 0

    def query(self, tau, args):
        args = self._check(args)
        t = args[0] if args else 0
        return self.child.query(tau, (self.index(t),))

    def describe(self):
        kind = f"(pairfix {self.w})" if self.kind == "pairfix" else self.kind
        return f"(slice {kind} {self.child.describe()})"
