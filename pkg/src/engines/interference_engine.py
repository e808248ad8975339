"""
Interference engine.

A phase element g is run through the circuit T_H^-1 g T_H: the first beamsplitter turns
the phase-protected statistics into ones g may change, the second turns them back.
The output row of g lists, for every outcome of the final measurement, which input
coordinate it reads (when the composite is a coordinate permutation) or the exact
pulled-back covector otherwise.

Functions:
    hadamard_for(theory) -> Transform
    label_phase_elements(theory, phase) -> List[Tuple[str, Transform]]
    run_circuit(theory, hadamard, label, g, m) -> CircuitResult
    interference_table(theory, hadamard, phase, m) -> InterferenceTable
    indistinguishable_partition(table) -> List[List[str]]
    hadamard_conjugates(theory) -> List[Tuple[str, Tuple[str, ...]]]
    commutes(a, b, theory) -> bool
    locality_admissible(a_set, b_set, theory, m, hadamard) -> LocalityReport
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.exceptions import InvalidTransformError, PreconditionError, UnsupportedError
from src.engines.phase_engine import PhaseGroupResult
from src.models.state import Measurement
from src.models.theory import Theory
from src.models.transform import Transform, compose
from src.repositories.transforms_repo import (
    hadamard_for_theory,
    matches_builtin,
    named_phase_elements,
    spekkens_phase_labels,
    square_phase_elements,
)
from src.utils.format_utils import rational_str
from src.utils.linalg_utils import dot, inverse, vec_mat

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class CircuitResult:
    """
    One row of an interference table.

    Attributes:
        label (str): Phase element label.
        composite (Transform): T_H^-1 g T_H.
        functionals (Tuple[Vector, ...]): Each measurement effect pulled back through the
            composite; evaluating them on an input state gives the output statistics.
        symbolic_row (Optional[Tuple[str, ...]]): Input coordinate label read by each
            outcome, present iff the composite is a coordinate permutation and every
            pulled-back effect is a single coordinate.
    """

    label: str
    composite: Transform
    functionals: Tuple[Vector, ...]
    symbolic_row: Optional[Tuple[str, ...]]

    def evaluate(self, v: Sequence[Fraction]) -> Vector:
        return tuple(dot(f, v) for f in self.functionals)

    def outcome_strings(self) -> List[str]:
        if self.symbolic_row is not None:
            return list(self.symbolic_row)
        return ["(" + ",".join(rational_str(x) for x in f) + ").s" for f in self.functionals]


@dataclass(frozen=True, eq=False)
class InterferenceTable:
    theory: str
    measurement: Measurement
    rows: Tuple[CircuitResult, ...]

    @property
    def nontrivial(self) -> bool:
        return len({r.functionals for r in self.rows}) > 1

    @property
    def symbolic(self) -> bool:
        return all(r.symbolic_row is not None for r in self.rows)


@dataclass(frozen=True)
class LocalityReport:
    admissible: bool
    witness: Optional[Tuple[str, str]] = None
    state: Optional[int] = None
    statistics_ab: Optional[Vector] = None
    statistics_ba: Optional[Vector] = None


def hadamard_for(theory: Theory) -> Transform:
    """
    The registered beamsplitter of a theory.

    Raises:
        UnsupportedError: If no beamsplitter is registered for the theory.
    """
    t = hadamard_for_theory(theory)
    if t is None:
        raise UnsupportedError(f"no beamsplitter registered for {theory.name}")
    return t


def _inverse(t: Transform) -> Transform:
    inv = inverse(t.matrix)
    if inv is None:
        raise InvalidTransformError(f"{t.label or 'transform'} is not invertible")
    return Transform(tuple(tuple(r) for r in inv), t.reversible, f"{t.label}^-1")


def label_phase_elements(theory: Theory, phase: PhaseGroupResult) -> List[Tuple[str, Transform]]:
    """
    Display labels for the elements of a phase group, in row order.

    Registered named elements (the square symmetries g1..g8) are matched by their
    action; explicit-group labels such as g2134 are kept, ordered by the registered
    row order where there is one; anything else is numbered g1, g2, ... in group order.
    """
    group = phase.group
    named = named_phase_elements(theory)
    if named is not None:
        by_perm = {theory.vertex_permutation(t): t for t in named}
        if all(p in by_perm for p in group.permutations):
            labelled = [(by_perm[p].label, by_perm[p]) for p in group.permutations]
            return sorted(labelled, key=lambda item: int(item[0][1:]))
    labels = [t.label for t in group.elements]
    if all(labels) and len(set(labels)) == len(labels):
        order = spekkens_phase_labels()
        rank = {label: i for i, label in enumerate(order)}
        return sorted(zip(labels, group.elements), key=lambda item: (rank.get(item[0], len(order)), item[0]))
    return [(f"g{k}", t) for k, t in enumerate(group.elements, start=1)]


def run_circuit(
    theory: Theory, hadamard: Transform, label: str, g: Transform, m: Measurement
) -> CircuitResult:
    composite = compose(_inverse(hadamard), compose(g, hadamard))
    functionals = tuple(tuple(vec_mat(e.coords, composite.matrix)) for e in m.effects)
    symbolic = None
    coordinate_labels = theory.layout.coordinate_labels()
    if composite.source_coordinates() is not None:
        reads = []
        for f in functionals:
            ones = [i for i, x in enumerate(f) if x != 0]
            if len(ones) != 1 or f[ones[0]] != 1:
                break
            reads.append(coordinate_labels[ones[0]])
        else:
            symbolic = tuple(reads)
    return CircuitResult(label, composite, functionals, symbolic)


def interference_table(
    theory: Theory, hadamard: Transform, phase: PhaseGroupResult, m: Measurement
) -> InterferenceTable:
    """
    One row per phase element: the final statistics of m after T_H^-1 g T_H.

    Raises:
        InvalidTransformError: If the beamsplitter is not invertible.
    """
    rows = tuple(
        run_circuit(theory, hadamard, label, g, m) for label, g in label_phase_elements(theory, phase)
    )
    logger.info("%s / %s: %d interference rows", theory.name, m.label, len(rows))
    return InterferenceTable(theory.name, m, rows)


def indistinguishable_partition(table: InterferenceTable) -> List[List[str]]:
    """
    Group phase elements whose output rows coincide, in order of first appearance.

    Raises:
        UnsupportedError: If some row has no symbolic form.
    """
    if not table.symbolic:
        raise UnsupportedError("partition needs symbolic rows for every phase element")
    blocks: List[List[str]] = []
    seen = {}
    for row in table.rows:
        if row.symbolic_row in seen:
            blocks[seen[row.symbolic_row]].append(row.label)
        else:
            seen[row.symbolic_row] = len(blocks)
            blocks.append([row.label])
    return blocks


def hadamard_conjugates(theory: Theory) -> List[Tuple[str, Tuple[str, ...]]]:
    """
    The full output state of T_H^-1 g T_H for each square symmetry g1..g8 of the
    3-in 2-out gbit, as a permutation of the labels P(+-1|X), P(+-1|Y), P(+-1|Z).

    Raises:
        PreconditionError: For any theory other than gbit-3-2.
    """
    if not matches_builtin(theory, "gbit-3-2"):
        raise PreconditionError("conjugate listing is defined for gbit-3-2 only")
    hadamard = hadamard_for(theory)
    labels = theory.layout.coordinate_labels("P")
    out = []
    for g in square_phase_elements():
        composite = compose(_inverse(hadamard), compose(g, hadamard))
        sources = composite.source_coordinates()
        assert sources is not None, "square symmetries conjugate to coordinate permutations"
        out.append((g.label, tuple(labels[s] for s in sources)))
    return out


def commutes(a: Transform, b: Transform, theory: Theory) -> bool:
    """True iff a b and b a act identically on the state space."""
    return theory.action(compose(a, b)) == theory.action(compose(b, a))


def locality_admissible(
    a_set: Sequence[Transform],
    b_set: Sequence[Transform],
    theory: Theory,
    m: Measurement,
    hadamard: Optional[Transform] = None,
) -> LocalityReport:
    """
    Whether every operation of one branch commutes with every operation of the other.

    On failure, the witness is a non-commuting pair and an extreme point whose final
    statistics of m differ between the two orderings; with a beamsplitter given, both
    orderings are placed between T_H and T_H^-1. If no non-commuting pair changes the
    statistics, the first non-commuting pair is returned with no state.
    """
    wrap_in, wrap_out = hadamard, _inverse(hadamard) if hadamard is not None else None
    first_failure = None
    for a in a_set:
        for b in b_set:
            if commutes(a, b, theory):
                continue
            ab, ba = compose(a, b), compose(b, a)
            if hadamard is not None:
                ab = compose(wrap_out, compose(ab, wrap_in))
                ba = compose(wrap_out, compose(ba, wrap_in))
            pair = (a.label, b.label)
            first_failure = first_failure or LocalityReport(False, pair)
            for i, v in enumerate(theory.vectors):
                stats_ab, stats_ba = m.statistics(ab.apply(v)), m.statistics(ba.apply(v))
                if stats_ab != stats_ba:
                    return LocalityReport(False, pair, i, stats_ab, stats_ba)
    return first_failure or LocalityReport(True)
