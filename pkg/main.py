"""
Main entry point for the F_σ-Mathias forcing workbench.

This script initializes telemetry tracing and hands the command line to the
click command group in `cli.commands`. Every subcommand runs one budgeted
construction or check and reports certificates.

Workflow:
1. Sets up OpenTelemetry tracing (exporting only when an OTLP endpoint is configured).
2. Dispatches argv to the matching subcommand.
3. Exits 0 on certified success, 1 on input errors, 2 on Unknown verdicts or exhausted budgets.

Usage:
    python main.py eval-sub --mu "(meet (card) (const 3))" --x "(fin 0 1 2 3 4)"
    python main.py demo cohesive --sets "(prog 0 2) (prog 0 3)" --stages 12 --out cohesive.jsonl --verify

Requirements:
    - All dependencies listed in requirements.txt must be installed.
"""

import sys

from cli.commands import main as dispatch
from telemetry import setup_tracing


def main():
    setup_tracing()
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
