"""Command-line surface: click commands, run manifests and the event log."""

from cli.commands import main, workbench

__all__ = ["main", "workbench"]
