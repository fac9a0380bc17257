"""
Tree specifications: downward-closed sets of binary strings (codes for closed
classes) fed to the Mazur construction.

Classes:
    Growth:     a growth function F given as a table plus an affine tail.
    TreeSpec:   contains(σ) decides membership; covers(x) decides whether some
                τ ∈ T of length max(x)+1 has x ⊆ ones(τ).
    Subsets     ones(τ) ⊆ S
    Cylinder    prefixes of an explicit set of depth-D strings, free beyond D
    DomEnum     the k-th one of τ sits at a position ≥ F(k)
    Stab        no two strings of tree(b, ones(σ) ∪ b) give a functional different outputs
    Pi1Hat      ones(σ) ⊆ A and no string of tree(b, ones(σ) ∪ b) violates the matrix at y
    NoConv      no string of tree(b, ones(σ) ∪ b) makes F converge at the arguments

Every class except Cylinder only loses strings when ones are added at a fixed
length, so for them covers(x) is membership of χ_x itself.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from core.finsets import BitString, FinSet
from core.periodic import PeriodicSet
from core.trees import tree_strings
from names.base import Name
from names.oracle import TuringTable


@dataclass(frozen=True)
class Growth:
    values: tuple[int, ...]
    slope: int = 0
    intercept: int = 0

    def __call__(self, k: int) -> int:
        if k < len(self.values):
            return self.values[k]
        return self.slope * k + self.intercept

    def describe(self) -> str:
        table = " ".join(f"{k} {v}" for k, v in enumerate(self.values))
        return f"(table {table}) (affine {self.slope} {self.intercept})"


class TreeSpec(ABC):
    @abstractmethod
    def contains(self, sigma: BitString) -> bool:
        ...

    @abstractmethod
    def describe(self) -> str:
        ...

    def covers(self, x: FinSet) -> bool:
        return self.contains(x.characteristic())

    @cached_property
    def key(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class Subsets(TreeSpec):
    allowed: PeriodicSet

    def contains(self, sigma):
        return self.allowed.contains_finset(sigma.ones())

    def covers(self, x):
        return self.allowed.contains_finset(x)

    def describe(self):
        return f"(subsets {self.allowed.describe()})"


@dataclass(frozen=True)
class Cylinder(TreeSpec):
    depth: int
    allowed: frozenset[str]

    def __post_init__(self):
        for s in self.allowed:
            if len(s) != self.depth or any(ch not in "01" for ch in s):
                raise ValueError(f"cylinder strings must be 0/1 of length {self.depth}: {s!r}")

    def contains(self, sigma):
        if len(sigma) <= self.depth:
            return any(s.startswith(sigma.bits) for s in self.allowed)
        return sigma.bits[: self.depth] in self.allowed

    def covers(self, x):
        if not x:
            return self.contains(BitString())
        head = x.below(self.depth)
        return any(head.issubset(BitString(s).ones()) for s in self.allowed)

    def describe(self):
        parts = ["cylinder", str(self.depth), *(f'"{s}"' for s in sorted(self.allowed))]
        return "(" + " ".join(parts) + ")"


@dataclass(frozen=True)
class DomEnum(TreeSpec):
    growth: Growth

    def contains(self, sigma):
        return all(e >= self.growth(k) for k, e in enumerate(sigma.ones()))

    def covers(self, x):
        return all(e >= self.growth(k) for k, e in enumerate(x))

    def describe(self):
        return f"(domenum {self.growth.describe()})"


def _outputs_conflict(functional: Name, b: FinSet, allowed: FinSet, length: int) -> bool:
    if isinstance(functional, TuringTable):
        for x in functional.arguments():
            if x >= length:
                continue
            seen = set()
            for p, y in functional.patterns_for(x):
                if len(p) <= length and _in_tree(b, allowed, p):
                    seen.add(y)
            if len(seen) > 1:
                return True
        return False
    for x in range(length):
        seen = set()
        for tau in tree_strings(b, allowed, length):
            y = functional.query(tau, (x,))
            if y is not None:
                seen.add(y)
                if len(seen) > 1:
                    return True
    return False


def _in_tree(b: FinSet, allowed: FinSet, tau: BitString) -> bool:
    for i, bit in enumerate(tau.bits):
        if bit == "1" and i not in allowed:
            return False
        if bit == "0" and i in b:
            return False
    return True


@dataclass(frozen=True)
class Stab(TreeSpec):
    functional: Name
    b: FinSet

    def contains(self, sigma):
        allowed = sigma.ones().union(self.b)
        return not _outputs_conflict(self.functional, self.b, allowed, len(sigma))

    def describe(self):
        return f"(stab {self.functional.describe()} {self.b.describe()})"


@dataclass(frozen=True)
class Pi1Hat(TreeSpec):
    """Closed piece {B ⊆ A : φ̂(b, B ∪ b; y)} of a Π⁰₁ family φ(w) = ∀ū θ(w, ū).

    `matrix` is the compiled bounded matrix with arguments (w, ū)."""

    matrix: Name
    b: FinSet
    y: int
    envelope: PeriodicSet

    def contains(self, sigma):
        ones = sigma.ones()
        if not self.envelope.contains_finset(ones):
            return False
        length = len(sigma)
        width = self.matrix.arity - 1
        for tau in tree_strings(self.b, ones.union(self.b), length):
            for us in product(range(length), repeat=width):
                z = self.matrix.query(tau, (self.y, *us))
                if z is not None and z != 0:
                    return False
        return True

    def describe(self):
        return (
            f"(pi1hat {self.matrix.describe()} {self.b.describe()} {self.y} "
            f"{self.envelope.describe()})"
        )


@dataclass(frozen=True)
class NoConv(TreeSpec):
    functional: Name
    b: FinSet
    args: tuple[int, ...]

    def contains(self, sigma):
        allowed = sigma.ones().union(self.b)
        for tau in tree_strings(self.b, allowed, len(sigma)):
            if self.functional.query(tau, self.args) is not None:
                return False
        return True

    def describe(self):
        args = " ".join(map(str, self.args))
        return f"(noconv {self.functional.describe()} {self.b.describe()} ({args}))"
