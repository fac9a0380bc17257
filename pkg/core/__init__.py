"""Canonical encodings shared by every other package: finite sets, bit strings,
Cantor pairing, eventually periodic sets and the S-expression reader."""

from core.errors import (
    BudgetExceeded,
    InconsistentTable,
    InvalidCondition,
    NotFoundUpTo,
    ParseError,
    StageAborted,
    UnknownLabel,
    WorkbenchError,
)
from core.finsets import BitString, FinSet
from core.pairing import fst, pair, snd, unpair
from core.periodic import PeriodicSet

__all__ = [
    "BitString",
    "BudgetExceeded",
    "FinSet",
    "InconsistentTable",
    "InvalidCondition",
    "NotFoundUpTo",
    "ParseError",
    "PeriodicSet",
    "StageAborted",
    "UnknownLabel",
    "WorkbenchError",
    "fst",
    "pair",
    "snd",
    "unpair",
]
