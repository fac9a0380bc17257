"""tree(a, A): the binary strings τ with a ∩ dom(τ) ⊆ ones(τ) ⊆ A."""

from __future__ import annotations

from itertools import product
from typing import Container, Iterator

from core.finsets import BitString, FinSet


def tree_member(a: FinSet, A: Container[int], tau: BitString) -> bool:
    for i, bit in enumerate(tau.bits):
        if bit == "1":
            if i not in A:
                return False
        elif i in a:
            return False
    return True


def tree_strings(a: FinSet, A: Container[int], length: int) -> Iterator[BitString]:
    """Every τ ∈ tree(a, A) of exactly the given length, in lexicographic order."""
    choices = []
    for i in range(length):
        if i in a:
            if i not in A:
                return
            choices.append("1")
        elif i in A:
            choices.append("01")
        else:
            choices.append("0")
    for bits in product(*choices):
        yield BitString("".join(bits))


def free_positions(a: FinSet, A: Container[int], length: int) -> int:
    return sum(1 for i in range(length) if i in A and i not in a)
