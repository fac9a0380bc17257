"""Brute-force reference implementations, written straight from the definitions."""

from itertools import product

from core.finsets import BitString, FinSet


def meet_brute(mu, nu, x: FinSet) -> int:
    return min(mu.eval(y) + nu.eval(x.diff(y)) for y in x.subsets())


def set_partitions(elements):
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first, *partition[i]]] + partition[i + 1:]
        yield [[first], *partition]


def theta_brute(family, x: FinSet) -> int:
    i = 1
    while True:
        if x.max() < i or any(family[j].covers(x) for j in range(min(i, len(family)))):
            return i
        i += 1


def mazur_brute(family, x: FinSet) -> int:
    if not x:
        return 0
    return min(
        sum(theta_brute(family, FinSet.of(piece)) for piece in partition)
        for partition in set_partitions(list(x))
    )


def tree_brute(a: FinSet, A, length: int) -> list[BitString]:
    out = []
    for bits in product("01", repeat=length):
        tau = BitString("".join(bits))
        if a.below(length).issubset(tau.ones()) and all(i in A for i in tau.ones()):
            out.append(tau)
    return out


def all_strings(length: int) -> list[BitString]:
    return [BitString("".join(bits)) for bits in product("01", repeat=length)]
