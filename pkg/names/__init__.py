"""Partial names (monotone oracle functionals) and their constructors."""

from names.base import Name
from names.combinators import (
    BoundedSum,
    Canonical,
    EmptyName,
    Fix,
    PrimRec,
    Superpose,
    const_name,
    proj_name,
    superpose,
)
from names.oracle import GenericChi, GenericEnum, Slice, TuringTable

__all__ = [
    "BoundedSum",
    "Canonical",
    "EmptyName",
    "Fix",
    "GenericChi",
    "GenericEnum",
    "Name",
    "PrimRec",
    "Slice",
    "Superpose",
    "TuringTable",
    "const_name",
    "proj_name",
    "superpose",
]
