"""
Ground (oracle-free) total functions: the arithmetic terms canonical names are
built from.

Terms are built from naturals, parameters, the operations

    +  *  -  (truncated subtraction)  absdiff  pair  fst  snd  half

and finite tables with an affine tail, `(tab (table k0 v0 k1 v1 ...) (affine a b) t)`,
which map t to the tabulated value when listed and to a·t + b otherwise.

Classes:
    GroundTerm and its cases Lit, Arg, Op, Tab.
    GroundFunction: named parameters plus a body term; callable on a tuple of naturals.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

from core.pairing import fst, pair, snd


class GroundTerm(ABC):
    @abstractmethod
    def evaluate(self, args: tuple[int, ...]) -> int:
        ...

    @abstractmethod
    def describe(self, params: tuple[str, ...]) -> str:
        ...

    def max_arg(self) -> int:
        return -1


@dataclass(frozen=True)
class Lit(GroundTerm):
    value: int

    def evaluate(self, args):
        return self.value

    def describe(self, params):
        return str(self.value)


@dataclass(frozen=True)
class Arg(GroundTerm):
    index: int

    def evaluate(self, args):
        return args[self.index]

    def describe(self, params):
        return params[self.index]

    def max_arg(self):
        return self.index


_BINARY = {
    "+": lambda x, y: x + y,
    "*": lambda x, y: x * y,
    "-": lambda x, y: max(x - y, 0),
    "absdiff": lambda x, y: abs(x - y),
    "pair": pair,
}

_UNARY = {
    "fst": fst,
    "snd": snd,
    "half": lambda x: x // 2,
}

OPERATORS = {**{k: 2 for k in _BINARY}, **{k: 1 for k in _UNARY}}


@dataclass(frozen=True)
class Op(GroundTerm):
    op: str
    operands: tuple[GroundTerm, ...]

    def __post_init__(self):
        if OPERATORS.get(self.op) != len(self.operands):
            raise ValueError(f"operator {self.op} takes {OPERATORS.get(self.op)} operands")

    def evaluate(self, args):
        values = [t.evaluate(args) for t in self.operands]
        if self.op in _BINARY:
            return _BINARY[self.op](*values)
        return _UNARY[self.op](*values)

    def describe(self, params):
        return f"({self.op} " + " ".join(t.describe(params) for t in self.operands) + ")"

    def max_arg(self):
        return max(t.max_arg() for t in self.operands)


@dataclass(frozen=True)
class Tab(GroundTerm):
    """Finite table on {0..len-1} with affine tail a·k + b beyond it."""

    values: tuple[int, ...]
    slope: int
    intercept: int
    operand: GroundTerm

    def lookup(self, k: int) -> int:
        if k < len(self.values):
            return self.values[k]
        return self.slope * k + self.intercept

    def evaluate(self, args):
        return self.lookup(self.operand.evaluate(args))

    def describe(self, params):
        table = " ".join(f"{k} {v}" for k, v in enumerate(self.values))
        return (
            f"(tab (table {table}) (affine {self.slope} {self.intercept}) "
            f"{self.operand.describe(params)})"
        )

    def max_arg(self):
        return self.operand.max_arg()


@dataclass(frozen=True)
class GroundFunction:
    params: tuple[str, ...]
    body: GroundTerm
    explicit: bool = True

    def __post_init__(self):
        if self.body.max_arg() >= len(self.params):
            raise ValueError("ground term refers to a missing parameter")

    @property
    def arity(self) -> int:
        return len(self.params)

    def __call__(self, args: tuple[int, ...]) -> int:
        return self.body.evaluate(tuple(args))

    def describe(self) -> str:
        if self.explicit:
            return f"({' '.join(self.params)}) {self.body.describe(self.params)}"
        return self.body.describe(self.params)


# ---- Common functions ----

def _params(arity: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(arity))


def constant(n: int, arity: int = 0) -> GroundFunction:
    return GroundFunction(_params(arity), Lit(n))


def projection(i: int, arity: int) -> GroundFunction:
    return GroundFunction(_params(arity), Arg(i))


def identity() -> GroundFunction:
    return projection(0, 1)


def successor() -> GroundFunction:
    return GroundFunction(("x",), Op("+", (Arg(0), Lit(1))))


def binary(op: str) -> GroundFunction:
    return GroundFunction(("x", "y"), Op(op, (Arg(0), Arg(1))))


def unary(op: str) -> GroundFunction:
    return GroundFunction(("x",), Op(op, (Arg(0),)))


def one_minus() -> GroundFunction:
    """x ↦ 1 ∸ x"""
    return GroundFunction(("x",), Op("-", (Lit(1), Arg(0))))


def affine_table(values: tuple[int, ...], slope: int, intercept: int) -> GroundFunction:
    return GroundFunction(("k",), Tab(tuple(values), slope, intercept, Arg(0)))
