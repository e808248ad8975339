"""
Symmetry engine: automorphism groups of polytope theories and finite-group identification.

An automorphism is found by choosing images for the affine basis points of the theory,
one at a time, among extreme points with the same facet-incidence degree and the same
number of shared facets with every image chosen so far. A complete choice fixes a
linear map; it is kept when it sends every extreme point to a distinct extreme point.
Block normalization is then preserved automatically, since extreme points are
normalized and the map fixes the orthogonal complement of their span.

Functions:
    automorphism_group(theory) -> Group
    allowed_group(theory, exclude_reflections) -> Group
    orientation_subgroup(group, theory) -> Group
    identify(group) -> GroupName
    claimed_structure_note(theory, group) -> Optional[DiscrepancyNote]
"""

import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from src import constants
from src.constants import IDENTIFICATION_BOUND
from src.exceptions import BudgetExceededError, TheoryValidationError
from src.models.group import Group, GroupName, GroupSignature
from src.models.theory import Theory, TransformPolicy
from src.repositories.theories_repo import matches_builtin
from src.schemas import DiscrepancyNote
from src.utils.permutation_utils import Perm, closure, find_isomorphism

logger = logging.getLogger(__name__)


class _Search:
    """Backtracking over images of the affine basis, counting visited candidates."""

    def __init__(self, theory: Theory, budget: int):
        self.theory = theory
        self.budget = budget
        self.visited = 0
        self.basis = theory.affine_basis
        self.degree = [len(inc) for inc in theory.incidence]
        self.shared = theory.shared_facets
        self.found: List[Perm] = []

    def candidates(self, level: int, assigned: Sequence[int]) -> List[int]:
        source = self.basis[level]
        out = []
        for cand in range(len(self.degree)):
            self.visited += 1
            if self.visited > self.budget:
                raise BudgetExceededError(
                    f"{self.theory.name}: automorphism search exceeded {self.budget} candidates"
                )
            if cand in assigned or self.degree[cand] != self.degree[source]:
                continue
            if any(
                self.shared[cand][assigned[p]] != self.shared[source][self.basis[p]]
                for p in range(level)
            ):
                continue
            out.append(cand)
        return out

    def run(self, assigned: List[int]) -> List[Perm]:
        level = len(assigned)
        if level == len(self.basis):
            perm = self.theory.permutation_from_basis_images(assigned)
            if perm is not None:
                self.found.append(perm)
            return self.found
        for cand in self.candidates(level, assigned):
            assigned.append(cand)
            self.run(assigned)
            assigned.pop()
        return self.found


def _search_from(theory: Theory, first: int, budget: int) -> Tuple[List[Perm], int]:
    search = _Search(theory, budget)
    search.run([first])
    return search.found, search.visited


def _automorphism_permutations(theory: Theory, budget: int, workers: int) -> Set[Perm]:
    root = _Search(theory, budget)
    anchors = root.candidates(0, [])
    if workers > 1 and len(anchors) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_from, [theory] * len(anchors), anchors, [budget] * len(anchors)))
    else:
        results = [_search_from(theory, a, budget) for a in anchors]
    perms: Set[Perm] = set()
    visited = root.visited
    for found, count in results:
        perms.update(found)
        visited += count
    if visited > budget:
        raise BudgetExceededError(
            f"{theory.name}: automorphism search visited {visited} candidates, budget is {budget}"
        )
    logger.info(
        "%s: %d automorphisms, %d candidates visited", theory.name, len(perms), visited
    )
    return perms


def _explicit_group(theory: Theory) -> Group:
    labelled: Dict[Perm, object] = {}
    for t in theory.explicit_transforms:
        labelled.setdefault(theory.vertex_permutation(t), t)
    degree = len(theory.extreme_points)
    closed = closure(labelled, degree, constants.SEARCH_BUDGET)
    if closed != set(labelled):
        raise TheoryValidationError(
            f"{theory.name}: explicit transforms are not closed under composition "
            f"({len(labelled)} given, closure has {len(closed)})"
        )
    return Group.from_permutations(theory, closed, labelled)


def automorphism_group(theory: Theory, budget: Optional[int] = None) -> Group:
    """
    All linear automorphisms of the state space, as a validated group.

    For a theory with an explicit group, the explicit transforms are closure-checked
    and returned instead.

    Parameters:
        theory (Theory): The theory.
        budget (Optional[int]): Candidate budget; defaults to GPT_SEARCH_BUDGET.

    Returns:
        Group: Elements ordered lexicographically by their vertex permutation.

    Raises:
        BudgetExceededError: If the search visits more candidates than the budget.
        TheoryValidationError: If an explicit group is not closed.
    """
    if theory.transform_policy == TransformPolicy.EXPLICIT_GROUP:
        return _explicit_group(theory)
    budget = constants.SEARCH_BUDGET if budget is None else budget
    perms = _automorphism_permutations(theory, budget, constants.SEARCH_WORKERS)
    return Group.from_permutations(theory, perms)


def orientation_subgroup(group: Group, theory: Theory) -> Group:
    """Elements whose action on the affine hull has positive determinant."""
    keep = [p for p in group.permutations if theory.orientation(p) > 0]
    return group.subgroup(keep)


def allowed_group(theory: Theory, exclude_reflections: bool = False) -> Group:
    """The theory's allowed reversible group, optionally cut down to orientation-preserving elements."""
    group = automorphism_group(theory)
    if exclude_reflections or theory.transform_policy == TransformPolicy.EXCLUDE_REFLECTIONS:
        group = orientation_subgroup(group, theory)
    return group


# ---------------------------------------------------------------------- identification


@dataclass(frozen=True)
class _Reference:
    label: str
    group: PermutationGroup
    signature: GroupSignature


def _hyperoctahedral(n: int) -> PermutationGroup:
    """Signed permutations of n coordinates, acting on the 2n points +e_i (2i) and -e_i (2i+1)."""
    swap = list(range(2 * n))
    swap[0:4] = [2, 3, 0, 1]
    cycle = [(2 * ((p // 2 + 1) % n)) + p % 2 for p in range(2 * n)]
    flip = list(range(2 * n))
    flip[0:2] = [1, 0]
    return PermutationGroup([Permutation(swap), Permutation(cycle), Permutation(flip)])


def _reference(label: str, group: PermutationGroup) -> _Reference:
    orders = tuple(sorted(p.order() for p in group.elements))
    return _Reference(label, group, GroupSignature(group.order(), group.is_abelian, orders))


@lru_cache(maxsize=None)
def reference_groups() -> Tuple[_Reference, ...]:
    return (
        _reference("C2", CyclicGroup(2)),
        _reference("Z2xZ2", AbelianGroup(2, 2)),
        _reference("S3", SymmetricGroup(3)),
        _reference("D4_order8", DihedralGroup(4)),
        _reference("S4", SymmetricGroup(4)),
        _reference("B3_order48", _hyperoctahedral(3)),
        _reference("B4_order384", _hyperoctahedral(4)),
    )


def identify(group: Group) -> GroupName:
    """
    Name a group by its signature, confirming by isomorphism search when the signature
    alone does not pin it down.

    Orders 1 to 8 are determined by the signature; larger table entries are confirmed
    by an explicit isomorphism from the reference group.
    """
    order = group.order
    if order == 1:
        return GroupName("trivial", 1)
    if order > IDENTIFICATION_BOUND:
        return GroupName(f"other({order})", order)
    signature = group.signature
    for ref in reference_groups():
        if ref.signature != signature:
            continue
        if order <= 8 or find_isomorphism(ref.group, group.permutations):
            return GroupName(ref.label, order)
    if signature.is_abelian and order in signature.element_orders:
        return GroupName(f"C{order}", order)
    return GroupName(f"other({order})", order)


def claimed_structure_note(theory: Theory, group: Group) -> Optional[DiscrepancyNote]:
    """
    For the 3-in and 4-in 2-out gbits, compare the computed order with the claimed
    structure S_(2^(m-1)) semidirect C2, of order (2^(m-1))! * 2.
    """
    match = re.fullmatch(r"gbit-([34])-2", theory.name)
    if match is None or not matches_builtin(theory):
        return None
    half = 2 ** (int(match.group(1)) - 1)
    claimed = factorial(half) * 2
    if claimed == group.order:
        return None
    return DiscrepancyNote(
        kind="order-mismatch",
        claimed_structure=f"S{half} x| C2",
        claimed_order=claimed,
        computed_order=group.order,
    )
