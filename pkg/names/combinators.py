"""
Name constructors built from other names.

Classes:
    Canonical(fn):            the canonical name of a ground function, defined on every prefix.
    Superpose(outer, inner):  outer(inner_1, ..., inner_l), defined where all parts are.
    PrimRec(base, step):      primitive recursion on the last argument.
    BoundedSum(bound, body):  Σ_{w ≤ bound(args)} body(args, w).
    Fix(child, values):       child with its leading arguments fixed.
    EmptyName(arity):         never defined.

PrimRec argument order: the name takes (x̄, y); `base` takes x̄ and `step` takes
(z_i, i, x̄) and returns z_{i+1}. The value at (x̄, y) is z_y.
"""

from __future__ import annotations

from dataclasses import dataclass

from core.finsets import BitString
from names.base import Args, Name
from names.ground import GroundFunction, constant, projection


@dataclass(frozen=True)
class Canonical(Name):
    fn: GroundFunction

    @property
    def arity(self):
        return self.fn.arity

    def query(self, tau: BitString, args: Args):
        return self.fn(self._check(args))

    def describe(self):
        return f"(canon {self.fn.describe()})"


@dataclass(frozen=True)
class Superpose(Name):
    outer: Name
    inner: tuple[Name, ...]
    arity: int

    def __post_init__(self):
        if len(self.inner) != self.outer.arity:
            raise ValueError(
                f"{self.outer.describe()} needs {self.outer.arity} inner names, got {len(self.inner)}"
            )
        for child in self.inner:
            if child.arity != self.arity:
                raise ValueError(f"{child.describe()} has arity {child.arity}, expected {self.arity}")

    def query(self, tau, args):
        args = self._check(args)
        values = []
        for child in self.inner:
            y = child.query(tau, args)
            if y is None:
                return None
            values.append(y)
        return self.outer.query(tau, tuple(values))

    def describe(self):
        if not self.inner:
            return f"(lift {self.arity} {self.outer.describe()})"
        return "(superpose " + " ".join(n.describe() for n in (self.outer, *self.inner)) + ")"


def superpose(outer: Name, *inner: Name, arity: int | None = None) -> Superpose:
    if arity is None:
        if not inner:
            raise ValueError("arity is required when superposing a nullary name")
        arity = inner[0].arity
    return Superpose(outer, tuple(inner), arity)


@dataclass(frozen=True)
class PrimRec(Name):
    base: Name
    step: Name

    def __post_init__(self):
        if self.step.arity != self.base.arity + 2:
            raise ValueError(
                f"step arity must be base arity + 2 ({self.base.arity + 2}), got {self.step.arity}"
            )

    @property
    def arity(self):
        return self.base.arity + 1

    def query(self, tau, args):
        args = self._check(args)
        params, y = args[:-1], args[-1]
        z = self.base.query(tau, params)
        for i in range(y):
            if z is None:
                return None
            z = self.step.query(tau, (z, i, *params))
        return z

    def describe(self):
        return f"(primrec {self.base.describe()} {self.step.describe()})"


@dataclass(frozen=True)
class BoundedSum(Name):
    bound: Name
    body: Name

    def __post_init__(self):
        if self.body.arity != self.bound.arity + 1:
            raise ValueError("bounded sum body takes the bound's arguments plus the summation index")

    @property
    def arity(self):
        return self.bound.arity

    def query(self, tau, args):
        args = self._check(args)
        n = self.bound.query(tau, args)
        if n is None:
            return None
        total = 0
        for w in range(n + 1):
            z = self.body.query(tau, (*args, w))
            if z is None:
                return None
            total += z
        return total

    def describe(self):
        return f"(bsum {self.bound.describe()} {self.body.describe()})"


@dataclass(frozen=True)
class Fix(Name):
    child: Name
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) > self.child.arity:
            raise ValueError("more fixed values than arguments")

    @property
    def arity(self):
        return self.child.arity - len(self.values)

    def query(self, tau, args):
        return self.child.query(tau, (*self.values, *self._check(args)))

    def describe(self):
        fixed = " ".join(map(str, self.values))
        return f"(fix {self.child.describe()} ({fixed}))"


@dataclass(frozen=True)
class EmptyName(Name):
    arity: int = 1

    def query(self, tau, args):
        self._check(args)
        return None

    def describe(self):
        return f"(nowhere {self.arity})"


# ---- Shorthands ----

def const_name(n: int, arity: int = 0) -> Canonical:
    return Canonical(constant(n, arity))


def proj_name(i: int, arity: int) -> Canonical:
    return Canonical(projection(i, arity))
