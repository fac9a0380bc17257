"""Integer-valued lower semicontinuous submeasures, the Mazur construction and
budgeted (un)boundedness certificates."""

from submeasure.checks import (
    BoundedSoFar,
    MeetReport,
    Unknown,
    Witnessed,
    fin_generated_check,
    unbounded_check,
)
from submeasure.expressions import (
    Card,
    Const,
    Dom,
    IMeet,
    Join,
    Mazur,
    Meet,
    Submeasure,
    clear_cache,
    meet_all,
)
from submeasure.mazur import decompose, mazur_eval, mazur_partition, mazur_theta
from submeasure.trees import Cylinder, DomEnum, Growth, NoConv, Pi1Hat, Stab, Subsets, TreeSpec

__all__ = [
    "BoundedSoFar",
    "Card",
    "Const",
    "Cylinder",
    "Dom",
    "DomEnum",
    "Growth",
    "IMeet",
    "Join",
    "Mazur",
    "Meet",
    "MeetReport",
    "NoConv",
    "Pi1Hat",
    "Stab",
    "Submeasure",
    "Subsets",
    "TreeSpec",
    "Unknown",
    "Witnessed",
    "clear_cache",
    "decompose",
    "fin_generated_check",
    "mazur_eval",
    "mazur_partition",
    "mazur_theta",
    "meet_all",
    "unbounded_check",
]
