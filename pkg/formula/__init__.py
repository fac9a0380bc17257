from formula.ast import (
    And,
    App,
    Atom,
    BForall,
    Exists,
    Forall,
    Formula,
    HoleApp,
    Iff,
    Implies,
    Not,
    Or,
    Step,
    Term,
    Var,
    close,
    const,
    fill_hole,
    free_count,
)
from formula.classes import SyntClass, classify, desugar, is_bounded
from formula.evaluate import classical_eval
from formula.syntax import parse_family, parse_formula, print_formula

__all__ = [
    "And",
    "App",
    "Atom",
    "BForall",
    "Exists",
    "Forall",
    "Formula",
    "HoleApp",
    "Iff",
    "Implies",
    "Not",
    "Or",
    "Step",
    "SyntClass",
    "Term",
    "Var",
    "classical_eval",
    "classify",
    "close",
    "const",
    "desugar",
    "fill_hole",
    "free_count",
    "is_bounded",
    "parse_family",
    "parse_formula",
    "print_formula",
]
