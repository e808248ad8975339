"""
This module contains the interference commands.

Functions:
- interfere(name_or_path: str, label: str) -> InterferenceReport: One row per phase
  element of the measurement, as seen through the registered beamsplitter.
- conjugates(name_or_path: str) -> ConjugatesReport: Full output states of the conjugated
  square symmetries of the 3-in 2-out gbit.
"""

from src.dependencies import resolve_measurement, resolve_theory
from src.engines.interference_engine import (
    hadamard_conjugates,
    hadamard_for,
    indistinguishable_partition,
    interference_table,
)
from src.engines.phase_engine import phase_group
from src.engines.symmetry_engine import allowed_group
from src.schemas import ConjugatesReport, InterferenceReport, InterferenceRow


def interfere(name_or_path: str, label: str) -> InterferenceReport:
    """
    Build the interference table of a measurement.

    Parameters:
        name_or_path (str): Built-in name or path to a theory file.
        label (str): Measurement whose phase group is tabulated and which is read out.

    Returns:
        InterferenceReport: Rows, whether any interference is visible, and the partition
            of indistinguishable phase elements when every row is symbolic.

    Raises:
        UnsupportedError: If no beamsplitter is registered for the theory.
    """
    theory = resolve_theory(name_or_path)
    m = resolve_measurement(theory, label)
    hadamard = hadamard_for(theory)
    phase = phase_group(theory, m, allowed_group(theory))
    table = interference_table(theory, hadamard, phase, m)
    partition = None
    if table.nontrivial and table.symbolic:
        partition = indistinguishable_partition(table)
    return InterferenceReport(
        theory=theory.name,
        measurement=m.label,
        outcome_labels=list(m.outcomes),
        rows=[
            InterferenceRow(
                element=r.label, outcomes=r.outcome_strings(), symbolic=r.symbolic_row is not None
            )
            for r in table.rows
        ],
        nontrivial=table.nontrivial,
        partition=partition,
    )


def conjugates(name_or_path: str) -> ConjugatesReport:
    theory = resolve_theory(name_or_path)
    rows = [
        InterferenceRow(element=label, outcomes=list(reads), symbolic=True)
        for label, reads in hadamard_conjugates(theory)
    ]
    return ConjugatesReport(
        theory=theory.name, coordinate_labels=theory.layout.coordinate_labels(), rows=rows
    )
