"""Cantor pairing ⟨w, t⟩ = (w+t)(w+t+1)/2 + t and its inverses."""

from math import isqrt


def pair(w: int, t: int) -> int:
    d = w + t
    return d * (d + 1) // 2 + t


def unpair(z: int) -> tuple[int, int]:
    d = (isqrt(8 * z + 1) - 1) // 2
    t = z - d * (d + 1) // 2
    return d - t, t


def fst(z: int) -> int:
    return unpair(z)[0]


def snd(z: int) -> int:
    return unpair(z)[1]


def untuple(z: int, k: int) -> tuple[int, ...]:
    """Decode z as a k-tuple: (fst z, untuple(snd z, k-1)), with z itself for k = 1."""
    if k == 0:
        return ()
    if k == 1:
        return (z,)
    w, t = unpair(z)
    return (w, *untuple(t, k - 1))
