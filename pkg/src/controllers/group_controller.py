"""
This module contains the automorphism group command.

Functions:
- auto_group(name_or_path: str, exclude_reflections: bool) -> GroupReport: Allowed group
  of a theory with its identification and, for the 3-in and 4-in 2-out gbits, a note
  when the computed order differs from the claimed structure.
"""

from src.dependencies import resolve_theory
from src.engines.symmetry_engine import allowed_group, claimed_structure_note, identify
from src.schemas import GroupReport
from src.utils.format_utils import rational_str


def auto_group(name_or_path: str, exclude_reflections: bool = False) -> GroupReport:
    """
    Compute the allowed reversible group of a theory.

    Parameters:
        name_or_path (str): Built-in name or path to a theory file.
        exclude_reflections (bool): Keep only orientation-preserving elements.

    Returns:
        GroupReport: Order, abelianness, identification, element-order histogram and
            generator matrices.

    Raises:
        BudgetExceededError: If the automorphism search runs past GPT_SEARCH_BUDGET.
    """
    theory = resolve_theory(name_or_path)
    group = allowed_group(theory, exclude_reflections)
    note = None if exclude_reflections else claimed_structure_note(theory, group)
    return GroupReport(
        theory=theory.name,
        exclude_reflections=exclude_reflections,
        order=group.order,
        is_abelian=group.is_abelian,
        identification=identify(group).label,
        element_orders={str(k): v for k, v in group.order_histogram()},
        generators=[[[rational_str(x) for x in row] for row in g.matrix] for g in group.generators],
        note=note,
    )
