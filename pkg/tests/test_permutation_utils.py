import pytest
from sympy.combinatorics.named_groups import CyclicGroup, DihedralGroup, SymmetricGroup

from src.exceptions import BudgetExceededError
from src.utils.permutation_utils import (
    closure,
    compose,
    conjugacy_class_sizes,
    find_isomorphism,
    greedy_generators,
    identity_perm,
    invert,
    perm_group,
    perm_order,
)


def _elements(group):
    return sorted(tuple(p.array_form) for p in group.elements)


def test_compose_applies_right_argument_first():
    p, q = (1, 2, 0), (1, 0, 2)
    assert compose(p, q) == (2, 1, 0)
    assert compose(p, invert(p)) == identity_perm(3)


def test_perm_order():
    assert perm_order((1, 2, 0, 3)) == 3
    assert perm_order((1, 0, 3, 2)) == 2
    assert perm_order(identity_perm(4)) == 1


def test_closure_matches_sympy_order():
    group = DihedralGroup(5)
    gens = [tuple(g.array_form) for g in group.generators]
    assert len(closure(gens, group.degree)) == group.order() == 10


def test_closure_of_nothing_is_the_identity():
    assert closure([], 4) == {identity_perm(4)}
    assert perm_group([], 4).order() == 1


def test_closure_respects_budget():
    gens = [tuple(g.array_form) for g in SymmetricGroup(5).generators]
    with pytest.raises(BudgetExceededError):
        closure(gens, 5, budget=50)


def test_conjugacy_class_sizes_of_s3():
    sizes = conjugacy_class_sizes(SymmetricGroup(3), 3)
    assert sizes[identity_perm(3)] == 1
    assert sizes[(1, 0, 2)] == 3
    assert sizes[(1, 2, 0)] == 2


def test_greedy_generators_generate_the_group():
    elements = _elements(SymmetricGroup(4))
    gens = greedy_generators(elements)
    assert len(closure(gens, 4)) == 24
    assert len(gens) <= 3


def test_isomorphism_found_between_relabelled_copies():
    assert find_isomorphism(SymmetricGroup(3), _elements(DihedralGroup(3))) is not None


def test_no_isomorphism_between_cyclic_and_dihedral():
    assert find_isomorphism(CyclicGroup(6), _elements(DihedralGroup(3))) is None
