"""
Permutation algebra on tuples, with group-level work delegated to sympy.

A permutation `p` of degree n is a tuple with `p[i]` the image of `i`.
`compose(p, q)` applies `q` first, matching matrix products where `(a @ b) v`
applies `b` first.

Functions:
    identity_perm, compose, invert: Tuple helpers used by the models.
    perm_group: sympy PermutationGroup generated by tuples.
    perm_order: Order of one permutation.
    closure: All elements generated by a set of permutations, with a size budget.
    conjugacy_class_sizes: Class size of every element of a group.
    greedy_generators: A small generating subset of an explicit group.
    find_isomorphism: Generator-image search for an isomorphism between two groups.
"""

import logging
from collections import deque
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from src.exceptions import BudgetExceededError

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[image] = i
    return tuple(out)


def perm_group(generators: Iterable[Perm], degree: int) -> PermutationGroup:
    """The group generated by `generators`; the trivial group of `degree` when there are none."""
    gens = [Permutation(list(g), size=degree) for g in generators]
    return PermutationGroup(gens or [Permutation(list(identity_perm(degree)))])


def as_tuple(p: Permutation, degree: int) -> Perm:
    return tuple(p.array_form) + tuple(range(p.size, degree))


def perm_order(p: Perm) -> int:
    return Permutation(list(p)).order()


def closure(generators: Iterable[Perm], degree: int, budget: Optional[int] = None) -> Set[Perm]:
    """
    Raises:
        BudgetExceededError: If the generated group has more than `budget` elements.
    """
    group = perm_group(generators, degree)
    order = group.order()
    if budget is not None and order > budget:
        raise BudgetExceededError(f"group closure has {order} elements, exceeding {budget}")
    return {as_tuple(p, degree) for p in group.elements}


def conjugacy_class_sizes(group: PermutationGroup, degree: int) -> Dict[Perm, int]:
    sizes: Dict[Perm, int] = {}
    for cls in group.conjugacy_classes():
        for p in cls:
            sizes[as_tuple(p, degree)] = len(cls)
    return sizes


def greedy_generators(elements: Sequence[Perm]) -> List[Perm]:
    """Walk the elements in order and keep each one not generated by those kept so far."""
    if not elements:
        return []
    degree = len(elements[0])
    gens: List[Perm] = []
    generated = perm_group(gens, degree)
    for g in elements:
        if not generated.contains(Permutation(list(g))):
            gens.append(g)
            generated = perm_group(gens, degree)
            if generated.order() == len(elements):
                break
    return gens


def _extend(
    source_gens: Sequence[Perm], images: Sequence[Perm], source_degree: int, target_degree: int
) -> Optional[Dict[Perm, Perm]]:
    phi = {identity_perm(source_degree): identity_perm(target_degree)}
    queue = deque(phi)
    while queue:
        h = queue.popleft()
        for s, t in zip(source_gens, images):
            h2 = compose(h, s)
            t2 = compose(phi[h], t)
            known = phi.get(h2)
            if known is None:
                phi[h2] = t2
                queue.append(h2)
            elif known != t2:
                return None
    return phi


def find_isomorphism(
    source: PermutationGroup, target_elements: Sequence[Perm]
) -> Optional[Dict[Perm, Perm]]:
    """
    Search for an isomorphism from a source group onto a target group.

    Generator images are restricted to target elements with the same order and the
    same conjugacy class size, and pairs of images must reproduce the order of each
    pairwise generator product. Every surviving assignment is extended along the
    Cayley graph of the source; a consistent, bijective extension is an isomorphism.
    sympy's own `group_isomorphism` tries every tuple of target elements, which does
    not finish for the order-384 reference group.

    Parameters:
        source (PermutationGroup): The reference group.
        target_elements (Sequence[Perm]): All elements of the target group.

    Returns:
        Optional[Dict[Perm, Perm]]: The isomorphism as a mapping, or None.
    """
    if source.order() != len(target_elements):
        return None
    source_degree = source.degree
    target_degree = len(target_elements[0])
    target = perm_group(greedy_generators(target_elements), target_degree)
    source_gens = [as_tuple(g, source_degree) for g in source.generators]
    source_classes = conjugacy_class_sizes(source, source_degree)
    target_classes = conjugacy_class_sizes(target, target_degree)
    candidates = [
        [
            t
            for t in target_elements
            if perm_order(t) == perm_order(s) and target_classes[t] == source_classes[s]
        ]
        for s in source_gens
    ]
    pair_orders = {
        (i, j): perm_order(compose(source_gens[i], source_gens[j]))
        for i in range(len(source_gens))
        for j in range(i + 1, len(source_gens))
    }
    tried = 0
    for images in product(*candidates):
        if any(perm_order(compose(images[i], images[j])) != o for (i, j), o in pair_orders.items()):
            continue
        tried += 1
        phi = _extend(source_gens, images, source_degree, target_degree)
        if phi is not None and len(phi) == len(target_elements):
            if len(set(phi.values())) == len(target_elements):
                logger.debug("isomorphism found after %d extensions", tried)
                return phi
    logger.debug("no isomorphism after %d extensions", tried)
    return None
