"""
This module contains the theory commands: inspecting, validating and exporting theories.

Functions:
- show(name_or_path: str) -> TheoryReport: Summarise a built-in theory or theory file.
- validate(name_or_path: str) -> TheoryReport: Same summary; loading is the validation.
- export(name_or_path: str, output: Optional[str]) -> str: Theory file JSON, optionally
  written to disk.
"""

import logging
from pathlib import Path
from typing import Optional

from src.dependencies import resolve_theory
from src.engines.symmetry_engine import automorphism_group
from src.models.theory import Theory, TransformPolicy
from src.repositories.theories_repo import matches_builtin, spekkens_bit
from src.repositories.theory_file_repo import dump_theory
from src.schemas import TheoryReport

logger = logging.getLogger(__name__)


def _report(theory: Theory) -> TheoryReport:
    ontic = None
    if matches_builtin(theory, "spekkens"):
        ontic = len(spekkens_bit().ontic_vertices)
    allowed = None
    if theory.transform_policy == TransformPolicy.EXPLICIT_GROUP:
        allowed = automorphism_group(theory).order
    return TheoryReport(
        name=theory.name,
        blocks=[f"{b.label}:{','.join(b.outcomes)}" for b in theory.layout.blocks],
        total_dim=theory.layout.total_dim,
        vertex_count=len(theory.extreme_points),
        affine_dimension=theory.affine_dimension,
        distinguishable_count=theory.distinguishable_count,
        facet_count=len(theory.facets),
        transform_policy=theory.transform_policy.value,
        measurements=[m.label for m in theory.measurements],
        ontic_vertex_count=ontic,
        allowed_group_order=allowed,
    )


def show(name_or_path: str) -> TheoryReport:
    """
    Summarise a theory.

    Parameters:
        name_or_path (str): Built-in name or path to a theory file.

    Returns:
        TheoryReport: Layout, vertex count, affine dimension, N and facet count.

    Raises:
        ParseError: If a theory file is malformed.
        TheoryValidationError: If the V-rep and H-rep disagree.
    """
    return _report(resolve_theory(name_or_path))


def validate(name_or_path: str) -> TheoryReport:
    theory = resolve_theory(name_or_path)
    logger.info("%s is valid", theory.name)
    return _report(theory)


def export(name_or_path: str, output: Optional[str] = None) -> str:
    """
    Serialise a theory to the theory-file format.

    Parameters:
        name_or_path (str): Built-in name or path to a theory file.
        output (Optional[str]): File to write; nothing is written when None.

    Returns:
        str: The JSON text, or an empty string when it was written to `output`.
    """
    text = dump_theory(resolve_theory(name_or_path))
    if output is None:
        return text
    Path(output).write_text(text + "\n", encoding="utf-8")
    logger.info("wrote %s", output)
    return ""
