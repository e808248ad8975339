"""
Built-in theories and their measurements.

Every builder returns a fully validated `Theory`; builders are cached because theories
are immutable.

Functions:
    classical_dit(n) -> Theory: The n-outcome simplex.
    gbit(m, n) -> Theory: The m-in n-out gbit (product of m simplices).
    octahedron() -> Theory: The six Pauli eigenstates as a polytope.
    spekkens_bit() -> SpekkensBit: The toy-model bit with its induced S4 group.
    spekkens_measure_update(bit, s, basis, outcome) -> State: Measurement update rule.
    outcome_distribution(bit, s, basis) -> Tuple[Fraction, Fraction]
    standard_measurements(theory) -> List[Measurement]
    measurement_completeness(theory, m) -> List[Fraction]
    builtin_theory(name) -> Theory: Resolve "classical-N", "gbit-M-N", "spekkens", "octahedron".
    matches_builtin(theory, name) -> bool: Whether a theory is that built-in, not just its name.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import List, Optional, Sequence, Tuple

from src.constants import MAX_TOTAL_DIM
from src.exceptions import (
    BudgetExceededError,
    GPTError,
    PreconditionError,
    UnknownTheoryError,
    UnsupportedError,
    UsageError,
)
from src.models.layout import Block, MeasurementLayout
from src.models.state import Effect, Measurement, State
from src.models.theory import Facet, Theory, TransformPolicy
from src.models.transform import Transform
from src.utils.linalg_utils import dot

logger = logging.getLogger(__name__)

BINARY_OUTCOMES = ("+1", "-1")
PAULI_LAYOUT = MeasurementLayout(tuple(Block(b, BINARY_OUTCOMES) for b in "XYZ"))

# Epistemic extreme points of the Spekkens bit as unordered pairs of ontic states,
# in the order X+, X-, Y+, Y-, Z+, Z-.
ONTIC_PAIRS: Tuple[Tuple[int, int], ...] = ((0, 2), (1, 3), (0, 3), (1, 2), (0, 1), (2, 3))
ONTIC_POINTS = (
    (1, 0, 1, 0, 1, 0),
    (0, 1, 0, 1, 1, 0),
    (1, 0, 0, 1, 0, 1),
    (0, 1, 1, 0, 0, 1),
)


def _measurement(layout, label, rows, outcomes=(), fiducial_block=None) -> Measurement:
    effects = tuple(Effect.of(layout, row) for row in rows)
    return Measurement(label, effects, tuple(outcomes), fiducial_block)


def _fiducial(layout: MeasurementLayout, j: int) -> Measurement:
    block = layout.blocks[j]
    rows = [layout.one_hot(j, k) for k in range(block.size)]
    return _measurement(layout, block.label, rows, block.outcomes, j)


def _unit(layout: MeasurementLayout) -> Measurement:
    weight = Fraction(1, layout.block_count)
    return _measurement(layout, "unit", [[weight] * layout.total_dim], ("1",))


def _weighted(layout: MeasurementLayout, weight: Fraction, coords: Sequence[Tuple[int, int]]):
    """One effect per (block, outcome) pair, each the weighted one-hot on that coordinate."""
    rows, outcomes = [], []
    for j, k in coords:
        rows.append([weight * x for x in layout.one_hot(j, k)])
        outcomes.append(f"{layout.blocks[j].label}{layout.blocks[j].outcomes[k]}")
    return rows, outcomes


def _diagonal(layout: MeasurementLayout) -> Measurement:
    """Outcome k: the average over blocks of the probability of outcome k."""
    weight = Fraction(1, layout.block_count)
    size = layout.blocks[0].size
    rows = []
    for k in range(size):
        row = [Fraction(0)] * layout.total_dim
        for j in range(layout.block_count):
            row[layout.offsets[j] + k] = weight
        rows.append(row)
    return _measurement(layout, "diagonal", rows, layout.blocks[0].outcomes)


def _nonnegativity_facets(layout: MeasurementLayout) -> Tuple[Facet, ...]:
    facets = []
    for i, label in enumerate(layout.coordinate_labels()):
        normal = [0] * layout.total_dim
        normal[i] = -1
        facets.append(Facet.of(normal, 0, f"{label}>=0"))
    return tuple(facets)


@lru_cache(maxsize=None)
def classical_dit(n: int) -> Theory:
    """
    The classical n-level system: a simplex with one fiducial block.

    For n = 4 the outcomes are labelled as bit pairs and the parity and first-bit
    measurements are registered as well.

    Raises:
        UsageError: If n < 2.
    """
    if n < 2:
        raise UsageError(f"classical dit needs at least 2 outcomes, got {n}")
    outcomes = ("00", "01", "10", "11") if n == 4 else tuple(str(k) for k in range(n))
    layout = MeasurementLayout((Block("M0", outcomes),))
    vertices = tuple(State.of(layout, layout.one_hot(0, k)) for k in range(n))
    measurements = [_fiducial(layout, 0), _unit(layout)]
    if n == 4:
        measurements.append(
            _measurement(layout, "parity", [[1, 0, 0, 1], [0, 1, 1, 0]], ("even", "odd"))
        )
        measurements.append(
            _measurement(layout, "first-bit", [[1, 1, 0, 0], [0, 0, 1, 1]], ("0", "1"))
        )
    return Theory(
        name=f"classical-{n}",
        layout=layout,
        extreme_points=vertices,
        facets=_nonnegativity_facets(layout),
        distinguishable_count=n,
        measurements=tuple(measurements),
    )


@lru_cache(maxsize=None)
def gbit(m: int, n: int) -> Theory:
    """
    The m-in n-out gbit.

    Blocks are named X, Y, Z for the 3-in 2-out gbit and X0, X1, ... otherwise.
    Extreme points are the n^m deterministic assignments, ordered with outcome 0 first.

    Raises:
        UsageError: If m < 1 or n < 2.
        BudgetExceededError: If m*n exceeds GPT_MAX_TOTAL_DIM.
    """
    if m < 1 or n < 2:
        raise UsageError(f"gbit needs m >= 1 and n >= 2, got m={m}, n={n}")
    if m * n > MAX_TOTAL_DIM:
        raise BudgetExceededError(
            f"gbit-{m}-{n} has dimension {m * n}, the configured maximum is {MAX_TOTAL_DIM}"
        )
    labels = ("X", "Y", "Z") if (m, n) == (3, 2) else tuple(f"X{j}" for j in range(m))
    outcomes = BINARY_OUTCOMES if n == 2 else tuple(str(k) for k in range(n))
    layout = MeasurementLayout(tuple(Block(label, outcomes) for label in labels))

    vertices = []
    for assignment in product(range(n), repeat=m):
        coords = [Fraction(0)] * layout.total_dim
        for j, k in enumerate(assignment):
            coords[layout.offsets[j] + k] = Fraction(1)
        vertices.append(State(tuple(coords), layout))

    measurements = [_fiducial(layout, j) for j in range(m)]
    measurements += [_diagonal(layout), _unit(layout)]
    if (m, n) == (3, 2):
        rows, names = _weighted(layout, Fraction(1, 2), [(0, 0), (0, 1), (1, 0), (1, 1)])
        measurements.append(_measurement(layout, "four", rows, names))
    if (m, n) == (4, 2):
        rows, names = _weighted(layout, Fraction(1, 2), [(2, 0), (2, 1), (3, 0), (3, 1)])
        measurements.append(_measurement(layout, "four", rows, names))
        rows, names = _weighted(
            layout, Fraction(1, 3), [(j, k) for j in (0, 1, 3) for k in range(2)]
        )
        measurements.append(_measurement(layout, "six", rows, names))

    logger.info("built gbit-%d-%d with %d extreme points", m, n, len(vertices))
    return Theory(
        name=f"gbit-{m}-{n}",
        layout=layout,
        extreme_points=tuple(vertices),
        facets=_nonnegativity_facets(layout),
        distinguishable_count=n,
        measurements=tuple(measurements),
    )


def _pauli_vertices() -> Tuple[State, ...]:
    half = Fraction(1, 2)
    points = []
    for j in range(3):
        for k in range(2):
            coords = [half] * 6
            coords[2 * j] = Fraction(1 - k)
            coords[2 * j + 1] = Fraction(k)
            points.append(State(tuple(coords), PAULI_LAYOUT))
    return tuple(points)


def _octahedron_facets() -> Tuple[Facet, ...]:
    facets = []
    for sx, sy, sz in product((1, -1), repeat=3):
        facets.append(Facet.of((sx, -sx, sy, -sy, sz, -sz), 1, f"{sx:+d}x{sy:+d}y{sz:+d}z<=1"))
    return tuple(facets)


def _pauli_measurements() -> Tuple[Measurement, ...]:
    return tuple(_fiducial(PAULI_LAYOUT, j) for j in range(3)) + (
        _diagonal(PAULI_LAYOUT),
        _unit(PAULI_LAYOUT),
    )


@lru_cache(maxsize=None)
def octahedron() -> Theory:
    """The octahedron spanned by the six Pauli eigenstates, with all 48 symmetries allowed."""
    return Theory(
        name="octahedron",
        layout=PAULI_LAYOUT,
        extreme_points=_pauli_vertices(),
        facets=_octahedron_facets(),
        distinguishable_count=2,
        measurements=_pauli_measurements(),
    )


@dataclass(frozen=True, eq=False)
class SpekkensBit:
    """
    Spekkens toy bit.

    Attributes:
        theory (Theory): The epistemic octahedron with the induced S4 as its explicit group.
        ontic_vertices (Tuple[State, ...]): The four ontic states, as corners of the cube.
        pairs (Tuple[Tuple[int, int], ...]): For each epistemic extreme point, the two
            ontic states it is the equal mixture of.
        allowed_group_label (str): Description of the allowed group.
    """

    theory: Theory
    ontic_vertices: Tuple[State, ...]
    pairs: Tuple[Tuple[int, int], ...]
    allowed_group_label: str = "induced S4"

    @property
    def base(self) -> Theory:
        return self.theory

    def epistemic_state(self, basis: str, outcome: int) -> State:
        j = PAULI_LAYOUT.block_index(basis)
        return self.theory.extreme_points[2 * j + (0 if outcome == 1 else 1)]


def induced_transform(octa: Theory, ontic_perm: Sequence[int]) -> Transform:
    """The linear extension of an ontic permutation to the epistemic octahedron."""
    where = {frozenset(p): i for i, p in enumerate(ONTIC_PAIRS)}
    perm = tuple(where[frozenset(ontic_perm[a] for a in pair)] for pair in ONTIC_PAIRS)
    label = "g" + "".join(str(ontic_perm[i] + 1) for i in range(4))
    return octa.representative(perm, label)


@lru_cache(maxsize=None)
def spekkens_bit() -> SpekkensBit:
    octa = octahedron()
    induced = tuple(induced_transform(octa, p) for p in permutations(range(4)))
    theory = Theory(
        name="spekkens",
        layout=PAULI_LAYOUT,
        extreme_points=octa.extreme_points,
        facets=octa.facets,
        distinguishable_count=2,
        transform_policy=TransformPolicy.EXPLICIT_GROUP,
        measurements=octa.measurements,
        explicit_transforms=induced,
    )
    ontic = tuple(State.of(PAULI_LAYOUT, p) for p in ONTIC_POINTS)
    return SpekkensBit(theory, ontic, ONTIC_PAIRS)


def outcome_distribution(bit: SpekkensBit, s: State, basis: str) -> Tuple[Fraction, Fraction]:
    fiducial = bit.theory.find_measurement(basis)
    if fiducial is None:
        raise UsageError(f"unknown basis {basis!r}, expected X, Y or Z")
    plus, minus = fiducial.statistics(s.coords)
    return plus, minus


def spekkens_measure_update(bit: SpekkensBit, s: State, basis: str, outcome: int) -> State:
    """
    State after measuring `basis` on `s` and seeing `outcome`.

    The hidden variable is re-randomised within the observed outcome, so the result is
    the epistemic extreme point of that outcome regardless of `s`.

    Raises:
        UsageError: If the basis or outcome is not recognised.
        PreconditionError: If the outcome has probability zero in `s`.
    """
    if outcome not in (1, -1):
        raise UsageError(f"outcome must be +1 or -1, got {outcome}")
    plus, minus = outcome_distribution(bit, s, basis)
    if (plus if outcome == 1 else minus) == 0:
        raise PreconditionError(f"outcome {outcome:+d} of {basis} has probability zero")
    return bit.epistemic_state(basis, outcome)


def standard_measurements(theory: Theory) -> List[Measurement]:
    if not theory.measurements:
        raise UnknownTheoryError(f"no measurements registered for {theory.name}")
    return list(theory.measurements)


def measurement_completeness(theory: Theory, m: Measurement) -> List[Fraction]:
    """Distinct values of the summed effects over the extreme points; [1] means complete."""
    totals = {sum((dot(e.coords, v) for e in m.effects), Fraction(0)) for v in theory.vectors}
    return sorted(totals)


def builtin_theory(name: str) -> Theory:
    """
    Resolve a built-in theory name.

    Raises:
        UnsupportedError: For "qubit", which is only available through the qubit commands.
        UnknownTheoryError: For anything else not recognised.
    """
    if name == "spekkens":
        return spekkens_bit().theory
    if name == "octahedron":
        return octahedron()
    if name == "qubit":
        raise UnsupportedError("the qubit is not a polytope theory; use the qubit commands")
    match = re.fullmatch(r"classical-(\d+)", name)
    if match:
        return classical_dit(int(match.group(1)))
    match = re.fullmatch(r"gbit-(\d+)-(\d+)", name)
    if match:
        return gbit(int(match.group(1)), int(match.group(2)))
    raise UnknownTheoryError(f"unknown theory {name!r}")


def matches_builtin(theory: Theory, name: Optional[str] = None) -> bool:
    """
    True iff `theory` is called `name` (default: its own name) and has the layout,
    extreme points and transform policy of the built-in theory of that name.

    A theory file that only borrows a built-in name does not match.
    """
    name = theory.name if name is None else name
    if theory.name != name:
        return False
    try:
        builtin = builtin_theory(name)
    except GPTError:
        return False
    return (
        builtin.layout == theory.layout
        and builtin.vectors == theory.vectors
        and builtin.transform_policy == theory.transform_policy
    )
