"""
Partial k-ary names: monotone oracle functionals.

A name answers `query(tau, args)` with the value it has committed to on the
oracle prefix `tau`, or None while undefined. Two rules hold for every name:

- monotone: a value defined on tau stays the same on every extension of tau;
- functional: compatible prefixes never carry two values for the same args.

`key` is the content address of a name (its printed form) and is what every
cache and equality-by-content check uses.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from functools import cached_property

from core.finsets import BitString

Args = tuple[int, ...]


class Name(ABC):
    arity: int

    @abstractmethod
    def query(self, tau: BitString, args: Args) -> int | None:
        ...

    @abstractmethod
    def describe(self) -> str:
        ...

    @cached_property
    def key(self) -> str:
        return self.describe()

    def _check(self, args: Args) -> Args:
        args = tuple(args)
        if len(args) != self.arity:
            raise ValueError(f"{self.describe()} has arity {self.arity}, got {len(args)} arguments")
        return args

    def __str__(self) -> str:
        return self.key
