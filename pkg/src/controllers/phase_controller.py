"""
This module contains the phase group and theorem commands.

Functions:
- phase_group_report(name_or_path, label, exclude_reflections) -> PhaseGroupReport:
  Phase group of one measurement, with maximality checked against the whole ambient group.
- verify_theorem(names: Sequence[str]) -> TheoremSuiteReport: The phase dynamics
  dichotomy over a list of theories.
"""

import logging
from typing import Optional, Sequence

from src.dependencies import resolve_measurement, resolve_theory
from src.engines.phase_engine import phase_group, theorem_check, verify_phase_group
from src.engines.symmetry_engine import allowed_group
from src.schemas import PhaseGroupReport, TheoremSuiteReport

logger = logging.getLogger(__name__)

DEFAULT_SUITE = (
    "classical-2",
    "classical-3",
    "classical-4",
    "gbit-2-2",
    "gbit-3-2",
    "gbit-4-2",
    "gbit-2-3",
    "spekkens",
)


def phase_group_report(
    name_or_path: str, label: str, exclude_reflections: bool = False
) -> PhaseGroupReport:
    """
    Compute the phase group of a measurement.

    Parameters:
        name_or_path (str): Built-in name or path to a theory file.
        label (str): Measurement label registered for the theory.
        exclude_reflections (bool): Use the orientation-preserving ambient group.

    Returns:
        PhaseGroupReport: Orders, identification and the maximality check.

    Raises:
        UsageError: If the measurement label is unknown.
    """
    theory = resolve_theory(name_or_path)
    m = resolve_measurement(theory, label)
    ambient = allowed_group(theory, exclude_reflections)
    result = phase_group(theory, m, ambient)
    return PhaseGroupReport(
        theory=theory.name,
        measurement=m.label,
        exclude_reflections=exclude_reflections,
        ambient_order=ambient.order,
        order=result.group.order,
        is_abelian=result.group.is_abelian,
        is_trivial=result.is_trivial,
        identification=result.name.label,
        maximality_verified=verify_phase_group(result),
    )


def verify_theorem(names: Optional[Sequence[str]] = None) -> TheoremSuiteReport:
    """
    Check that phase dynamics is trivial exactly for the classical theories.

    Every theory is loaded (and so validated) before any check runs.

    Parameters:
        names (Optional[Sequence[str]]): Built-in names or theory files; the default suite
            when None or empty.
    """
    theories = [resolve_theory(name) for name in (names or DEFAULT_SUITE)]
    results = []
    for theory in theories:
        results.append(theorem_check(theory, allowed_group(theory)))
    passed = all(r.passed for r in results)
    logger.info("theorem suite over %d theories: %s", len(results), "passed" if passed else "failed")
    return TheoremSuiteReport(results=results, passed=passed)
