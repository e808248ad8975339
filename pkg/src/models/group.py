"""
Finite groups of transforms.

A `Group` stores its elements twice: as vertex permutations of the owning theory
(used for all algebra, so equality is equality of action on the state space) and as
representative transforms. The signature is always recomputed from the elements.

Elements are ordered lexicographically by their action on the canonical vertex
ordering: element g sorts by the tuple (index of g(v0), index of g(v1), ...), so the
identity always comes first.

Classes:
    GroupSignature: Order, abelianness and sorted element orders.
    GroupName: Identification label plus order.
    Group: The group itself.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import PermutationGroup

from src.exceptions import TheoryValidationError
from src.models.theory import Theory
from src.models.transform import Transform
from src.utils.permutation_utils import (
    Perm,
    greedy_generators,
    identity_perm,
    perm_group,
    perm_order,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupSignature:
    order: int
    is_abelian: bool
    element_orders: Tuple[int, ...]


@dataclass(frozen=True)
class GroupName:
    label: str
    order: int


@dataclass(frozen=True, eq=False)
class Group:
    theory: Theory
    permutations: Tuple[Perm, ...]
    elements: Tuple[Transform, ...]

    @classmethod
    def from_permutations(
        cls, theory: Theory, perms: Iterable[Perm], labels: Optional[Dict[Perm, Transform]] = None
    ) -> "Group":
        """
        Build a group, ordering elements lexicographically by their vertex action.

        Parameters:
            theory (Theory): The owning theory.
            perms (Iterable[Perm]): The elements as vertex permutations.
            labels (Optional[Dict[Perm, Transform]]): Transforms to keep verbatim for
                given permutations; other elements get representative matrices.
        """
        ordered = tuple(sorted(set(perms)))
        labels = labels or {}
        elements = tuple(labels.get(p) or theory.representative(p) for p in ordered)
        group = cls(theory, ordered, elements)
        group.check_axioms()
        return group

    @property
    def order(self) -> int:
        return len(self.permutations)

    @property
    def identity(self) -> Transform:
        return self.elements[0]

    @cached_property
    def index(self) -> Dict[Perm, int]:
        return {p: i for i, p in enumerate(self.permutations)}

    @cached_property
    def generator_permutations(self) -> Tuple[Perm, ...]:
        return tuple(greedy_generators(self.permutations))

    @cached_property
    def generators(self) -> Tuple[Transform, ...]:
        return tuple(self.elements[self.index[g]] for g in self.generator_permutations)

    @cached_property
    def sympy_group(self) -> PermutationGroup:
        return perm_group(self.generator_permutations, len(self.theory.extreme_points))

    @cached_property
    def signature(self) -> GroupSignature:
        orders = tuple(sorted(perm_order(p) for p in self.permutations))
        return GroupSignature(self.order, self.sympy_group.is_abelian, orders)

    @property
    def is_abelian(self) -> bool:
        return self.signature.is_abelian

    def element_for(self, perm: Perm) -> Transform:
        return self.elements[self.index[perm]]

    def permutation_of(self, t: Transform) -> Optional[Perm]:
        perm = self.theory.vertex_permutation(t)
        return perm if perm in self.index else None

    def subgroup(self, perms: Sequence[Perm]) -> "Group":
        keep = {p: self.element_for(p) for p in perms}
        return Group.from_permutations(self.theory, perms, keep)

    def check_axioms(self) -> None:
        """
        The identity comes first and the elements generate no group larger than themselves.

        Raises:
            TheoryValidationError: If any axiom fails.
        """
        degree = len(self.theory.extreme_points)
        if not self.permutations or self.permutations[0] != identity_perm(degree):
            raise TheoryValidationError("group does not contain the identity")
        generated = perm_group(self.permutations, degree).order()
        if generated != self.order:
            raise TheoryValidationError(
                f"elements are not closed under composition ({self.order} given, "
                f"they generate {generated})"
            )
        logger.debug("group of order %d passed the axiom check", self.order)

    def order_histogram(self) -> List[Tuple[int, int]]:
        return sorted(Counter(self.signature.element_orders).items())
