"""
Centralized configuration for the forcing workbench.

This file contains policy values only: budgets, thresholds and observability
settings. Modifying these does not require code changes elsewhere in the
application; CLI flags override them per run through `forcing.budgets.Budgets`.

Sections:
- Evaluation Budgets: limits for the subset/partition dynamic programs.
- Search Budgets: depth, horizon and window sizes for budgeted forcing checks.
- Condition Policy: admission threshold for new conditions.
- Observability: service name and OTLP endpoint for tracing.

Every value may be overridden with a `WORKBENCH_<NAME>` environment variable,
read once at import time (a local `.env` file is honoured through python-dotenv).

Usage:
    from config.settings import DP_BUDGET, HORIZON
"""

import os

from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    raw = os.getenv(f"WORKBENCH_{name}")
    return int(raw) if raw not in (None, "") else default


# ---------------------------
# Evaluation Budgets
# ---------------------------

# Largest finite set MEET accepts (subset DP is 3^n)
DP_BUDGET = _env_int("DP_BUDGET", 16)

# Largest finite set MAZUR accepts (partition DP)
MAZUR_BUDGET = _env_int("MAZUR_BUDGET", 14)

# Truncation depth N of countable meets
IMEET_DEPTH = _env_int("IMEET_DEPTH", 8)

# Entries each evaluation memo holds before it is emptied
CACHE_ENTRIES = _env_int("CACHE_ENTRIES", 200_000)


# ---------------------------
# Search Budgets
# ---------------------------

DEPTH = _env_int("DEPTH", 8)
HORIZON = _env_int("HORIZON", 64)
WINDOW = _env_int("WINDOW", 10)
STAGES = _env_int("STAGES", 12)
SEED = _env_int("SEED", 0)

# Argument bound for universally quantified variables in forcing checks
QUANTIFIER_BOUND = _env_int("QUANTIFIER_BOUND", 8)

# Extra random probe sets on top of the window power set
PROBE_RANDOM_SETS = _env_int("PROBE_RANDOM_SETS", 32)

# Number of envelope elements whose subsets extend a stem in b-windows
EXTENSION_WINDOW = _env_int("EXTENSION_WINDOW", 2)

# Witness values y tried by decision and approximation searches
VALUE_WINDOW = _env_int("VALUE_WINDOW", 2)


# ---------------------------
# Condition Policy
# ---------------------------

# Measure a condition must certify on its envelope to be admitted
ADMISSION_THRESHOLD = _env_int("ADMISSION_THRESHOLD", 4)


# ---------------------------
# Observability
# ---------------------------

SERVICE_NAME = "fsigma-forcing-workbench"

# Empty endpoint keeps tracing in-process (no exporter)
OTLP_ENDPOINT = os.getenv("WORKBENCH_OTLP_ENDPOINT", "")
