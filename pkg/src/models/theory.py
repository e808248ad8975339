"""
Theory Model Module.

A theory is a polytope of states given twice, by its extreme points (V-rep) and by
its facet inequalities (H-rep), together with the measurements registered for it and
the policy that decides which reversible transforms are allowed. The two
representations are cross-checked when the theory is constructed; everything the
engines need afterwards (affine bases, incidence data, vertex permutations) is derived
once and cached on the instance.

Classes:
    TransformPolicy: Which reversible transforms a theory allows.
    Facet: One inequality `normal . v <= bound`.
    Theory: The validated theory.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from src.constants import SEARCH_BUDGET
from src.exceptions import (
    BudgetExceededError,
    InvalidEffectError,
    InvalidStateError,
    InvalidTransformError,
    LayoutError,
    TheoryValidationError,
)
from src.models.layout import MeasurementLayout
from src.models.state import Measurement, State
from src.models.transform import Transform, transform_from_images
from src.utils.linalg_utils import (
    Number,
    determinant,
    dot,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    row_reduce,
    solve,
    sub,
    transpose,
    vector,
)
from src.utils.permutation_utils import Perm

logger = logging.getLogger(__name__)


class TransformPolicy(str, Enum):
    ALL_AUTOMORPHISMS = "all_automorphisms"
    EXCLUDE_REFLECTIONS = "exclude_reflections"
    EXPLICIT_GROUP = "explicit_group"


@dataclass(frozen=True)
class Facet:
    normal: Tuple[Fraction, ...]
    bound: Fraction
    label: str = ""

    @classmethod
    def of(cls, normal: Sequence[Number], bound: Number, label: str = "") -> "Facet":
        return cls(tuple(vector(normal)), vector([bound])[0], label)

    def slack(self, v: Sequence[Fraction]) -> Fraction:
        return self.bound - dot(self.normal, v)


@dataclass(frozen=True, eq=False)
class Theory:
    """
    Theory.

    Attributes:
        name (str): Built-in name ("gbit-3-2", "spekkens", ...) or the name in a theory file.
        layout (MeasurementLayout): The fiducial blocks.
        extreme_points (Tuple[State, ...]): V-rep, in canonical order.
        facets (Tuple[Facet, ...]): H-rep, not counting block normalization.
        distinguishable_count (int): N, the largest number of states one measurement
            distinguishes perfectly.
        transform_policy (TransformPolicy): Which automorphisms are allowed.
        measurements (Tuple[Measurement, ...]): Registered measurements, validated here.
        explicit_transforms (Tuple[Transform, ...]): Allowed group for
            `TransformPolicy.EXPLICIT_GROUP`.

    Raises:
        TheoryValidationError: If the representations or the declared N disagree.
        BudgetExceededError: If H-rep vertex enumeration would exceed the search budget.
    """

    name: str
    layout: MeasurementLayout
    extreme_points: Tuple[State, ...]
    facets: Tuple[Facet, ...]
    distinguishable_count: int
    transform_policy: TransformPolicy = TransformPolicy.ALL_AUTOMORPHISMS
    measurements: Tuple[Measurement, ...] = ()
    explicit_transforms: Tuple[Transform, ...] = ()

    def __post_init__(self):
        self._validate_points()
        self._validate_facets()
        self._validate_vertex_sets()
        for m in self.measurements:
            self.validate_measurement(m)
        self._validate_distinguishable_count()
        self._validate_explicit_transforms()
        logger.debug(
            "validated theory %s: %d vertices, %d facets, affine dimension %d",
            self.name,
            len(self.extreme_points),
            len(self.facets),
            self.affine_dimension,
        )

    # ------------------------------------------------------------------ validation

    def _validate_points(self) -> None:
        if not self.extreme_points:
            raise TheoryValidationError(f"{self.name}: no extreme points")
        for s in self.extreme_points:
            if s.layout != self.layout:
                raise LayoutError(f"{self.name}: extreme point uses a different layout")
        if len(self.vertex_index) != len(self.extreme_points):
            raise TheoryValidationError(f"{self.name}: duplicate extreme points")
        expected = self.layout.total_dim - self.layout.block_count
        if self.affine_dimension != expected:
            raise TheoryValidationError(
                f"{self.name}: extreme points span affine dimension {self.affine_dimension}, "
                f"the normalization hull has dimension {expected}"
            )

    def _validate_facets(self) -> None:
        for k, f in enumerate(self.facets):
            self.layout.check_dim(len(f.normal), f"facet {k} normal")
            tight = 0
            for i, v in enumerate(self.vectors):
                slack = f.slack(v)
                if slack < 0:
                    raise TheoryValidationError(
                        f"{self.name}: extreme point {i} violates facet {f.label or k}"
                    )
                tight += slack == 0
            if tight < self.affine_dimension:
                raise TheoryValidationError(
                    f"{self.name}: facet {f.label or k} is tight at {tight} extreme points, "
                    f"needs at least {self.affine_dimension}"
                )

    def _validate_vertex_sets(self) -> None:
        d = self.layout.total_dim
        norms = self.layout.normalization_functionals()
        for i, tight in enumerate(self.incidence):
            rows = norms + [list(self.facets[k].normal) for k in tight]
            if rank(rows) != d:
                raise TheoryValidationError(
                    f"{self.name}: extreme point {i} is not a vertex of the H-rep polytope"
                )
        choose = self.affine_dimension
        total = comb(len(self.facets), choose)
        if total > SEARCH_BUDGET:
            raise BudgetExceededError(
                f"{self.name}: vertex enumeration needs {total} facet combinations, "
                f"budget is {SEARCH_BUDGET}"
            )
        ones = [Fraction(1)] * self.layout.block_count
        for combo in combinations(range(len(self.facets)), choose):
            rows = norms + [list(self.facets[k].normal) for k in combo]
            rhs = ones + [self.facets[k].bound for k in combo]
            point = solve(rows, rhs)
            if point is None or not self.membership(point):
                continue
            if tuple(point) not in self.vertex_index:
                raise TheoryValidationError(
                    f"{self.name}: H-rep vertex {tuple(map(str, point))} is missing from the V-rep"
                )
        logger.debug("%s: enumerated %d facet combinations", self.name, total)

    def validate_measurement(self, m: Measurement) -> None:
        """
        Check a measurement against this theory's extreme points.

        Raises:
            InvalidEffectError: If an effect leaves [0, 1] on some extreme point.
            TheoryValidationError: If the effects do not sum to 1 on every extreme point.
        """
        if m.layout != self.layout:
            raise LayoutError(f"measurement {m.label!r} uses a different layout")
        for i, v in enumerate(self.vectors):
            values = m.statistics(v)
            if any(x < 0 or x > 1 for x in values):
                raise InvalidEffectError(
                    f"{self.name}: measurement {m.label!r} leaves [0, 1] on extreme point {i}"
                )
            if sum(values) != 1:
                raise TheoryValidationError(
                    f"{self.name}: measurement {m.label!r} sums to {sum(values)} on extreme point {i}"
                )

    def _validate_distinguishable_count(self) -> None:
        if self.distinguishable_count < 1:
            raise TheoryValidationError(f"{self.name}: N must be positive")
        if not self.measurements:
            return
        best = max(self.distinguished(m) for m in self.measurements)
        if best != self.distinguishable_count:
            raise TheoryValidationError(
                f"{self.name}: declared N={self.distinguishable_count}, "
                f"registered measurements distinguish at most {best}"
            )

    def _validate_explicit_transforms(self) -> None:
        if self.transform_policy == TransformPolicy.EXPLICIT_GROUP and not self.explicit_transforms:
            raise TheoryValidationError(f"{self.name}: explicit_group policy without transforms")
        for t in self.explicit_transforms:
            if self.vertex_permutation(t) is None:
                raise InvalidTransformError(
                    f"{self.name}: transform {t.label or '<unnamed>'} does not permute the extreme points"
                )

    # ------------------------------------------------------------------ derived data

    @cached_property
    def vectors(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(s.coords for s in self.extreme_points)

    @cached_property
    def vertex_index(self) -> Dict[Tuple[Fraction, ...], int]:
        return {v: i for i, v in enumerate(self.vectors)}

    @cached_property
    def affine_basis(self) -> Tuple[int, ...]:
        """Indices of the first affinely independent extreme points, greedily in canonical order."""
        base = self.vectors[0]
        chosen, directions = [0], []
        for i, v in enumerate(self.vectors[1:], start=1):
            trial = directions + [sub(v, base)]
            if rank(trial) == len(trial):
                chosen.append(i)
                directions = trial
        return tuple(chosen)

    @property
    def affine_dimension(self) -> int:
        return len(self.affine_basis) - 1

    @cached_property
    def complement(self) -> List[List[Fraction]]:
        """Basis of the orthogonal complement of the linear span of the extreme points."""
        return nullspace([list(v) for v in self.vectors])

    @cached_property
    def basis_inverse(self) -> List[List[Fraction]]:
        columns = [list(self.vectors[b]) for b in self.affine_basis] + self.complement
        inv = inverse(transpose(columns))
        assert inv is not None, "affine basis and complement must span the ambient space"
        return inv

    @cached_property
    def coefficients(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Each extreme point as a linear combination of the affine basis points."""
        k = len(self.affine_basis)
        return tuple(tuple(mat_vec(self.basis_inverse, v)[:k]) for v in self.vectors)

    @cached_property
    def incidence(self) -> Tuple[frozenset, ...]:
        return tuple(
            frozenset(k for k, f in enumerate(self.facets) if f.slack(v) == 0) for v in self.vectors
        )

    @cached_property
    def shared_facets(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(len(a & b) for b in self.incidence) for a in self.incidence)

    @cached_property
    def _direction_frame(self) -> Tuple[List[int], List[List[Fraction]]]:
        base = self.vectors[self.affine_basis[0]]
        columns = [sub(self.vectors[b], base) for b in self.affine_basis[1:]]
        _, pivot_rows = row_reduce(columns)
        square = [[col[r] for col in columns] for r in pivot_rows]
        return pivot_rows, inverse(square) if square else []

    @cached_property
    def _coordinate_profiles(self) -> Dict[Tuple[Fraction, ...], List[int]]:
        profiles: Dict[Tuple[Fraction, ...], List[int]] = {}
        for k in range(self.layout.total_dim):
            profiles.setdefault(tuple(v[k] for v in self.vectors), []).append(k)
        return profiles

    # ------------------------------------------------------------------ queries

    def membership(self, v: Sequence[Fraction]) -> bool:
        """True iff v satisfies block normalization and every facet inequality, exactly."""
        self.layout.check_dim(len(v))
        if any(total != 1 for total in self.layout.block_sums(v)):
            return False
        return all(f.slack(v) >= 0 for f in self.facets)

    def state(self, values: Sequence[Number]) -> State:
        s = State.of(self.layout, values)
        if not self.membership(s.coords):
            raise InvalidStateError(f"{s.describe()} is outside the state space of {self.name}")
        return s

    def find_measurement(self, label: str) -> Optional[Measurement]:
        return next((m for m in self.measurements if m.label == label), None)

    def distinguished(self, m: Measurement) -> int:
        """Number of outcomes of m that some extreme point produces with certainty."""
        return sum(any(dot(e.coords, v) == 1 for v in self.vectors) for e in m.effects)

    def vertex_permutation(self, t: Transform) -> Optional[Perm]:
        """The permutation a transform induces on the extreme points, or None if it induces none."""
        if t.dim != self.layout.total_dim:
            raise LayoutError(f"{t.dim}x{t.dim} transform for a {self.layout.total_dim}-dim theory")
        perm = []
        for v in self.vectors:
            j = self.vertex_index.get(t.apply(v))
            if j is None:
                return None
            perm.append(j)
        if len(set(perm)) != len(perm):
            return None
        return tuple(perm)

    def action(self, t: Transform) -> Tuple[Tuple[Fraction, ...], ...]:
        """Images of the extreme points; two transforms agree on the affine hull iff these agree."""
        return tuple(t.apply(v) for v in self.vectors)

    def permutation_from_basis_images(self, images: Sequence[int]) -> Optional[Perm]:
        """
        Extend an assignment of the affine basis points to a full vertex permutation.

        Returns:
            Optional[Perm]: The permutation, or None if some extreme point would be sent
                off the extreme-point set or two would collide.
        """
        targets = [self.vectors[i] for i in images]
        dim = self.layout.total_dim
        perm, used = [], set()
        for coeffs in self.coefficients:
            image = tuple(
                sum((c * t[r] for c, t in zip(coeffs, targets)), Fraction(0)) for r in range(dim)
            )
            j = self.vertex_index.get(image)
            if j is None or j in used:
                return None
            used.add(j)
            perm.append(j)
        return tuple(perm)

    def representative(self, perm: Perm, label: str = "") -> Transform:
        """
        The matrix used to store an automorphism given by its vertex permutation.

        A coordinate permutation is returned whenever one realises the action; otherwise
        the unique linear map sending the affine basis to its images and fixing the
        orthogonal complement of the vertex span.
        """
        sources = self._coordinate_sources(perm)
        if sources is not None:
            return transform_from_images(sources, label)
        columns = [list(self.vectors[perm[b]]) for b in self.affine_basis] + self.complement
        matrix = mat_mul(transpose(columns), self.basis_inverse)
        return Transform(tuple(tuple(r) for r in matrix), True, label)

    def _coordinate_sources(self, perm: Perm) -> Optional[Tuple[int, ...]]:
        available = {p: list(ks) for p, ks in self._coordinate_profiles.items()}
        sources = []
        for j in range(self.layout.total_dim):
            target = tuple(self.vectors[perm[i]][j] for i in range(len(self.vectors)))
            pool = available.get(target)
            if not pool:
                return None
            sources.append(pool.pop(0))
        return tuple(sources)

    def orientation(self, perm: Perm) -> int:
        """Sign of the determinant of the action on the affine hull's direction space."""
        if self.affine_dimension == 0:
            return 1
        pivot_rows, frame_inv = self._direction_frame
        base = self.vectors[perm[self.affine_basis[0]]]
        columns = [sub(self.vectors[perm[b]], base) for b in self.affine_basis[1:]]
        square = [[col[r] for col in columns] for r in pivot_rows]
        det = determinant(mat_mul(frame_inv, square))
        return 1 if det > 0 else -1
