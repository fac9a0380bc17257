"""Conditions, budgeted forcing checks, fusion and finite-stage generics."""

from forcing.approx import (
    ApproxWitness,
    LeastIndexReport,
    approx_forces,
    approx_from_witness,
    lambda_submeasure,
    least_sigma2_index,
)
from forcing.budgets import Budgets
from forcing.conditions import Condition, admit, extends, extends_s, probe_pool
from forcing.demos import cohesive_demo, cone_demo, dominate_demo, toy_functionals
from forcing.fusion import cone_run, fusion_run, limit_condition, limit_dominance, stage_certificates
from forcing.generic import decided_side, generic_build, side_is_stable
from forcing.handlers import ConeHandler, ConstantHandler, StarFusionHandler
from forcing.locality import DomainKilled, Localized, localize, locality_submeasure
from forcing.pi1 import ForcedUpTo, Refuted, forces_skolem, pi1_forces, refutes_herbrand
from forcing.pi2 import DecisionReport, pi2_decide
from forcing.pi3 import pi3_witness
from forcing.requirements import AvoidDominating, DecideSet, MeasureAtLeast, Pi2
from forcing.verify import verify_event, verify_run

__all__ = [
    "ApproxWitness",
    "AvoidDominating",
    "Budgets",
    "Condition",
    "ConeHandler",
    "ConstantHandler",
    "DecideSet",
    "DecisionReport",
    "DomainKilled",
    "ForcedUpTo",
    "LeastIndexReport",
    "Localized",
    "MeasureAtLeast",
    "Pi2",
    "Refuted",
    "StarFusionHandler",
    "admit",
    "approx_forces",
    "approx_from_witness",
    "cohesive_demo",
    "cone_demo",
    "cone_run",
    "decided_side",
    "dominate_demo",
    "extends",
    "extends_s",
    "forces_skolem",
    "fusion_run",
    "generic_build",
    "lambda_submeasure",
    "least_sigma2_index",
    "limit_condition",
    "limit_dominance",
    "localize",
    "locality_submeasure",
    "pi1_forces",
    "pi2_decide",
    "pi3_witness",
    "probe_pool",
    "refutes_herbrand",
    "side_is_stable",
    "stage_certificates",
    "toy_functionals",
    "verify_event",
    "verify_run",
]
