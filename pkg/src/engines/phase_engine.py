"""
Phase engine: phase groups, maximal measurements and irreversible phase dynamics.

A phase group is the stabilizer of a measurement's outcome statistics inside an ambient
group of reversible transforms. Statistics are linear in the state, so comparing them
on extreme points is exact and sufficient.

Functions:
    statistics_table(theory, m) -> List[Tuple[Fraction, ...]]
    phase_group(theory, m, ambient) -> PhaseGroupResult
    exclusion_witnesses(result, ambient) -> Dict[Perm, Tuple[int, int]]
    verify_phase_group(result) -> bool
    verify_maximal(theory, m) -> bool
    is_classical(theory) -> bool
    canonical_phase_map(theory, m) -> CanonicalPhaseMap
    is_phase_dynamics(theory, m, t) -> PhaseDynamicsReport
    mixture_of_phase_elements(weights, phase) -> Transform
    no_exchange_of_outcomes(theory, m, ambient) -> Optional[Transform]
    measurement_refines(theory, fine, coarse) -> bool
    theorem_check(theory, ambient) -> TheoremReport
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.exceptions import PreconditionError, UsageError, WeightError
from src.models.group import Group, GroupName
from src.models.state import Effect, Measurement
from src.models.theory import Theory
from src.models.transform import Transform
from src.engines.symmetry_engine import identify
from src.schemas import TheoremReport, WitnessPair
from src.utils.format_utils import rational_str
from src.utils.linalg_utils import dot, rank, sub
from src.utils.permutation_utils import Perm

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class PhaseGroupResult:
    group: Group
    measurement: Measurement
    name: GroupName
    is_trivial: bool
    ambient: Group


@dataclass(frozen=True, eq=False)
class PhaseDynamicsReport:
    transform: Transform
    preserves_measurement: bool
    preserves_state_space: bool
    is_reversible: bool
    changed_states: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CanonicalPhaseMap:
    """
    Canonical phase map T = sum_i mu_i e_i^T.

    Attributes:
        effects (Tuple[Effect, ...]): One-hot effects of the frozen block.
        anchors (Tuple[int, ...]): Indices of the chosen extreme points mu_i.
        transform (Transform): The map itself.
        obligations (Dict[str, bool]): "a" maps into the state space, "b" preserves the
            statistics, "c" a collapsing witness pair exists (non-classical theories only).
        witness (Optional[Tuple[int, int]]): Distinct extreme points with equal statistics
            and equal images.
        acts_as_identity (bool): Whether T fixes every extreme point.
    """

    effects: Tuple[Effect, ...]
    anchors: Tuple[int, ...]
    transform: Transform
    obligations: Dict[str, bool] = field(default_factory=dict)
    witness: Optional[Tuple[int, int]] = None
    acts_as_identity: bool = False

    @property
    def holds(self) -> bool:
        return all(self.obligations.values())


def statistics_table(theory: Theory, m: Measurement) -> List[Vector]:
    return [m.statistics(v) for v in theory.vectors]


def phase_group(theory: Theory, m: Measurement, ambient: Group) -> PhaseGroupResult:
    """
    The maximal subgroup of `ambient` leaving every outcome probability of `m` invariant.

    Parameters:
        theory (Theory): The theory; `m` must be registered or validated for it.
        m (Measurement): The measurement.
        ambient (Group): The allowed reversible group.

    Returns:
        PhaseGroupResult: The phase group, re-checked against the group axioms.
    """
    theory.validate_measurement(m)
    stats = statistics_table(theory, m)
    keep = [
        p for p in ambient.permutations if all(stats[p[i]] == stats[i] for i in range(len(stats)))
    ]
    group = ambient.subgroup(keep)
    name = identify(group)
    logger.info(
        "%s / %s: phase group of order %d inside ambient of order %d",
        theory.name,
        m.label,
        group.order,
        ambient.order,
    )
    return PhaseGroupResult(group, m, name, group.order == 1, ambient)


def exclusion_witnesses(result: PhaseGroupResult, ambient: Group) -> Dict[Perm, Tuple[int, int]]:
    """
    For every ambient element outside the phase group, the first (vertex, effect) pair on
    which applying its matrix changes an outcome probability.

    Elements with no such pair are absent from the mapping, so the phase group is
    maximal iff the mapping covers the whole complement.
    """
    theory = result.group.theory
    members = set(result.group.permutations)
    found: Dict[Perm, Tuple[int, int]] = {}
    for perm, t in zip(ambient.permutations, ambient.elements):
        if perm in members:
            continue
        for i, v in enumerate(theory.vectors):
            image = t.apply(v)
            k = next(
                (k for k, e in enumerate(result.measurement.effects) if dot(e.coords, image) != dot(e.coords, v)),
                None,
            )
            if k is not None:
                found[perm] = (i, k)
                break
    return found


def verify_phase_group(result: PhaseGroupResult) -> bool:
    """Soundness on every member and maximality by exhausting the complement."""
    theory = result.group.theory
    for t in result.group.elements:
        for v in theory.vectors:
            if result.measurement.statistics(t.apply(v)) != result.measurement.statistics(v):
                return False
    complement = result.ambient.order - result.group.order
    return len(exclusion_witnesses(result, result.ambient)) == complement


def verify_maximal(theory: Theory, m: Measurement) -> bool:
    """True iff m perfectly distinguishes N extreme points."""
    return theory.distinguished(m) == theory.distinguishable_count


def _maximal_measurements(theory: Theory) -> List[Measurement]:
    maximal = [m for m in theory.measurements if verify_maximal(theory, m)]
    if not maximal:
        raise PreconditionError(f"{theory.name}: no maximal measurement registered")
    return maximal


def _statistics_rank(theory: Theory, m: Measurement) -> int:
    stats = statistics_table(theory, m)
    return rank([sub(s, stats[0]) for s in stats[1:]]) if len(stats) > 1 else 0


def is_classical(theory: Theory) -> bool:
    """
    True iff the affine dimension is N - 1 and some maximal measurement's statistics
    map has full rank on the affine hull.

    Raises:
        PreconditionError: If the theory has no maximal measurement.
    """
    maximal = _maximal_measurements(theory)
    if theory.affine_dimension != theory.distinguishable_count - 1:
        return False
    return any(_statistics_rank(theory, m) == theory.affine_dimension for m in maximal)


def canonical_phase_map(theory: Theory, m: Measurement) -> CanonicalPhaseMap:
    """
    Build T = sum_i mu_i e_i^T for a maximal fiducial measurement and check it.

    mu_i is the lexicographically smallest extreme point with e_j . mu_i = delta_ij.

    Raises:
        PreconditionError: If m is not maximal or not a fiducial block measurement.
    """
    if m.fiducial_block is None:
        raise PreconditionError(f"{m.label} is not a fiducial block measurement")
    if not verify_maximal(theory, m):
        raise PreconditionError(f"{m.label} is not a maximal measurement of {theory.name}")

    stats = statistics_table(theory, m)
    n = len(m.effects)
    anchors = []
    for i in range(n):
        delta = tuple(Fraction(int(j == i)) for j in range(n))
        matches = [k for k, s in enumerate(stats) if s == delta]
        anchors.append(min(matches, key=lambda k: theory.vectors[k]))

    dim = theory.layout.total_dim
    rows = [
        [sum((theory.vectors[a][r] * e.coords[c] for a, e in zip(anchors, m.effects)), Fraction(0)) for c in range(dim)]
        for r in range(dim)
    ]
    t = Transform(tuple(tuple(row) for row in rows), reversible=False, label="canonical")

    images = theory.action(t)
    obligations = {
        "a": all(theory.membership(img) for img in images),
        "b": all(m.statistics(img) == s for img, s in zip(images, stats)),
    }
    acts_as_identity = all(img == v for img, v in zip(images, theory.vectors))
    witness = None
    classical = is_classical(theory)
    if not classical:
        witness = next(
            (
                (i, j)
                for i in range(len(stats))
                for j in range(i + 1, len(stats))
                if stats[i] == stats[j] and images[i] == images[j]
            ),
            None,
        )
        obligations["c"] = witness is not None
    logger.debug("%s: canonical map anchors %s, obligations %s", theory.name, anchors, obligations)
    return CanonicalPhaseMap(m.effects, tuple(anchors), t, obligations, witness, acts_as_identity)


def is_phase_dynamics(theory: Theory, m: Measurement, t: Transform) -> PhaseDynamicsReport:
    """
    Whether t maps the state space into itself while freezing the statistics of m.

    Returns:
        PhaseDynamicsReport: Also lists the extreme points t moves.
    """
    theory.layout.check_dim(t.dim, "transform")
    images = theory.action(t)
    return PhaseDynamicsReport(
        transform=t,
        preserves_measurement=all(m.statistics(img) == m.statistics(v) for img, v in zip(images, theory.vectors)),
        preserves_state_space=all(theory.membership(img) for img in images),
        is_reversible=theory.vertex_permutation(t) is not None,
        changed_states=tuple(i for i, (img, v) in enumerate(zip(images, theory.vectors)) if img != v),
    )


def mixture_of_phase_elements(
    weights: Sequence[Tuple[Fraction, Transform]], phase: PhaseGroupResult
) -> Transform:
    """
    Convex combination of phase group elements.

    Raises:
        WeightError: If a weight is negative, the weights do not sum to 1, or a transform
            is not an element of `phase`.
    """
    if not weights:
        raise WeightError("no weights given")
    if any(w < 0 for w, _ in weights) or sum(w for w, _ in weights) != 1:
        raise WeightError("weights must be nonnegative and sum to 1")
    for _, t in weights:
        if phase.group.permutation_of(t) is None:
            raise WeightError(f"transform {t.label or '<unnamed>'} is not in the phase group")
    nonzero = [(w, t) for w, t in weights if w != 0]
    if len(nonzero) == 1:
        return nonzero[0][1]
    dim = nonzero[0][1].dim
    rows = tuple(
        tuple(sum((w * t.matrix[r][c] for w, t in nonzero), Fraction(0)) for c in range(dim))
        for r in range(dim)
    )
    return Transform(rows, reversible=False, label="mixture")


def no_exchange_of_outcomes(theory: Theory, m: Measurement, ambient: Group) -> Optional[Transform]:
    """
    The first ambient element that swaps the two outcome probabilities of a binary
    measurement on every extreme point, or None.

    Raises:
        UsageError: If m does not have exactly two outcomes.
    """
    if len(m.effects) != 2:
        raise UsageError(f"{m.label} is not a two-outcome measurement")
    stats = statistics_table(theory, m)
    for perm, t in zip(ambient.permutations, ambient.elements):
        if all(stats[perm[i]] == (s[1], s[0]) for i, s in enumerate(stats)):
            return t
    return None


def measurement_refines(theory: Theory, fine: Measurement, coarse: Measurement) -> bool:
    """
    True iff every effect of `coarse` equals, on the state space, the sum of some subset
    of the effects of `fine`.
    """
    fine_stats = list(zip(*statistics_table(theory, fine)))
    for target in zip(*statistics_table(theory, coarse)):
        dominated = [f for f in fine_stats if all(x <= y for x, y in zip(f, target))]
        if not any(
            tuple(sum(col, Fraction(0)) for col in zip(*subset)) == target
            for subset in _subsets(dominated)
        ):
            return False
    return True


def _subsets(items: Sequence[Vector]):
    for mask in range(1, 2 ** len(items)):
        yield [item for k, item in enumerate(items) if mask >> k & 1]


def _first_fiducial(theory: Theory, maximal: Sequence[Measurement]) -> Measurement:
    m = next((m for m in maximal if m.fiducial_block is not None), None)
    if m is None:
        raise PreconditionError(f"{theory.name}: no maximal fiducial measurement registered")
    return m


def theorem_check(theory: Theory, ambient: Group) -> TheoremReport:
    """
    Run the phase dynamics dichotomy on one theory.

    A classical theory passes when every maximal measurement has a trivial phase group and
    the canonical phase map fixes every extreme point. A non-classical theory passes when
    the canonical phase map meets all three obligations with a concrete collapsing pair.

    Parameters:
        theory (Theory): The theory to check.
        ambient (Group): Its allowed reversible group.

    Returns:
        TheoremReport: Pass/fail with the evidence.

    Raises:
        PreconditionError: If no maximal fiducial measurement is registered.
    """
    maximal = _maximal_measurements(theory)
    classical = is_classical(theory)
    orders = {m.label: phase_group(theory, m, ambient).group.order for m in maximal}
    fiducial = _first_fiducial(theory, maximal)
    canonical = canonical_phase_map(theory, fiducial)

    witness = None
    if canonical.witness is not None:
        i, j = canonical.witness
        image = canonical.transform.apply(theory.vectors[i])
        witness = WitnessPair(
            first=[rational_str(x) for x in theory.vectors[i]],
            second=[rational_str(x) for x in theory.vectors[j]],
            image=[rational_str(x) for x in image],
        )

    if classical:
        passed = all(o == 1 for o in orders.values()) and canonical.acts_as_identity and canonical.holds
        detail = "" if passed else "classical theory with non-trivial phase dynamics"
    else:
        passed = canonical.holds
        detail = "" if passed else "canonical phase map failed an obligation"
    logger.info("%s: theorem check %s", theory.name, "passed" if passed else "failed")
    return TheoremReport(
        theory=theory.name,
        measurement=fiducial.label,
        is_classical=classical,
        maximal_phase_orders=orders,
        canonical_acts_as_identity=canonical.acts_as_identity,
        obligations=canonical.obligations,
        witness=witness,
        passed=passed,
        detail=detail,
    )
