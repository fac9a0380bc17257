"""Compilation of bounded formulas to names, Skolem/Herbrand templates and
witness names."""

from skolem.compile import compile_bounded, term_name
from skolem.templates import SkolemTemplate, herbrandize, pi1_normal_form, skolemize
from skolem.witnesses import (
    uniformize_sigma1,
    witness_bounded,
    witness_pi1,
    witness_sigma1,
    witness_skolem,
)

__all__ = [
    "SkolemTemplate",
    "compile_bounded",
    "herbrandize",
    "pi1_normal_form",
    "skolemize",
    "term_name",
    "uniformize_sigma1",
    "witness_bounded",
    "witness_pi1",
    "witness_sigma1",
    "witness_skolem",
]
