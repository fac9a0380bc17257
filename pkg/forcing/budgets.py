"""Per-run budgets. Defaults come from config.settings; CLI flags build a new
value with `dataclasses.replace` instead of touching the settings."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from config.settings import (
    ADMISSION_THRESHOLD,
    DEPTH,
    DP_BUDGET,
    EXTENSION_WINDOW,
    HORIZON,
    PROBE_RANDOM_SETS,
    QUANTIFIER_BOUND,
    SEED,
    STAGES,
    VALUE_WINDOW,
    WINDOW,
)


@dataclass(frozen=True)
class Budgets:
    depth: int = DEPTH
    horizon: int = HORIZON
    window: int = WINDOW
    stages: int = STAGES
    seed: int = SEED
    dp: int = DP_BUDGET
    bound: int = QUANTIFIER_BOUND
    probes: int = PROBE_RANDOM_SETS
    extension: int = EXTENSION_WINDOW
    values: int = VALUE_WINDOW
    threshold: int = ADMISSION_THRESHOLD

    def payload(self) -> dict:
        return asdict(self)
