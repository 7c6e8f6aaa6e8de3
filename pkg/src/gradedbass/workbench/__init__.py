"""Script language, runner, example catalog and command-line interface."""

from .catalog import UnknownCatalogEntry, catalog
from .dsl import DimensionMismatch, ParseError, UnknownName, WorkbenchScript, parse_script, render
from .runner import Report, RunOptions, run, run_text

__all__ = [
    "UnknownCatalogEntry", "catalog", "DimensionMismatch", "ParseError", "UnknownName",
    "WorkbenchScript", "parse_script", "render", "Report", "RunOptions", "run", "run_text",
]
