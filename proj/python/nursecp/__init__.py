"""Nurse rostering with finite-domain constraint programming."""

from ._nursecp import (
    ParseError,
    Preference,
    RosterInstance,
    Violation,
    benchmark_instance,
    canonical_instance,
    check_roster,
    count_violations,
    descriptive_stats,
    fitness,
    parse_instance,
    parse_roster,
    pso_run,
    render_instance,
    render_roster,
    solve,
    validate_instance,
)

__all__ = [
    "ParseError",
    "Preference",
    "RosterInstance",
    "Violation",
    "benchmark_instance",
    "canonical_instance",
    "check_roster",
    "count_violations",
    "descriptive_stats",
    "fitness",
    "parse_instance",
    "parse_roster",
    "pso_run",
    "render_instance",
    "render_roster",
    "solve",
    "validate_instance",
]
