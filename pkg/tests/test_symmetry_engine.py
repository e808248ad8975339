from dataclasses import replace
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from src import constants
from src.engines.symmetry_engine import (
    allowed_group,
    automorphism_group,
    claimed_structure_note,
    identify,
    orientation_subgroup,
)
from src.engines.phase_engine import phase_group
from src.exceptions import BudgetExceededError, TheoryValidationError
from src.models.theory import Theory, TransformPolicy
from src.repositories.theories_repo import builtin_theory


def _sympy_order(group):
    return PermutationGroup([Permutation(list(p)) for p in group.permutations]).order()


@lru_cache(maxsize=None)
def _group_of(name):
    return automorphism_group(builtin_theory(name))


def _facet_vertex_sets(theory):
    return [
        frozenset(i for i, inc in enumerate(theory.incidence) if k in inc)
        for k in range(len(theory.facets))
    ]


def test_classical_bit_has_the_swap_only(classical2):
    group = automorphism_group(classical2)
    assert group.order == 2
    assert identify(group).label == "C2"


def test_cube_group_and_rotations(gbit32_group, gbit32):
    assert gbit32_group.order == 48
    assert _sympy_order(gbit32_group) == 48
    assert identify(gbit32_group).label == "B3_order48"
    rotations = orientation_subgroup(gbit32_group, gbit32)
    assert rotations.order == 24
    assert identify(rotations).label == "S4"
    assert allowed_group(gbit32, exclude_reflections=True).order == 24


def test_octahedron_as_polytope(octa):
    group = automorphism_group(octa)
    assert group.order == 48
    assert all(t.source_coordinates() is not None for t in group.elements)


def test_spekkens_uses_its_explicit_group(spekkens_group):
    assert spekkens_group.order == 24
    assert identify(spekkens_group).label == "S4"
    assert not spekkens_group.is_abelian


def test_four_cube_group_and_structure_note(gbit42, gbit42_group):
    assert gbit42_group.order == 384
    assert _sympy_order(gbit42_group) == 384
    assert identify(gbit42_group).label == "B4_order384"
    note = claimed_structure_note(gbit42, gbit42_group)
    assert note is not None
    assert note.kind == "order-mismatch"
    assert note.claimed_order == 80640
    assert note.computed_order == 384


def test_three_cube_matches_the_claimed_structure(gbit32, gbit32_group):
    assert claimed_structure_note(gbit32, gbit32_group) is None


def test_cyclic_groups_are_named_by_order(gbit32, gbit32_group):
    rotations = orientation_subgroup(gbit32_group, gbit32)
    z_axis = phase_group(gbit32, gbit32.find_measurement("Z"), rotations)
    assert z_axis.name.label == "C4"
    body_diagonal = phase_group(gbit32, gbit32.find_measurement("diagonal"), rotations)
    assert body_diagonal.name.label == "C3"


def test_search_budget_is_enforced(gbit32):
    with pytest.raises(BudgetExceededError):
        automorphism_group(gbit32, budget=5)


def test_process_pool_search_matches_in_process(monkeypatch, gbit32_group):
    monkeypatch.setattr(constants, "SEARCH_WORKERS", 2)
    theory = builtin_theory("gbit-3-2")
    assert automorphism_group(theory).permutations == gbit32_group.permutations


def test_explicit_group_must_be_closed(spekkens):
    octa = builtin_theory("octahedron")
    three_cycle = spekkens.theory.explicit_transforms[3]
    partial = Theory(
        "partial",
        octa.layout,
        octa.extreme_points,
        octa.facets,
        2,
        TransformPolicy.EXPLICIT_GROUP,
        octa.measurements,
        (spekkens.theory.explicit_transforms[0], three_cycle),
    )
    with pytest.raises(TheoryValidationError):
        automorphism_group(partial)


@pytest.mark.parametrize("name", ["classical-3", "gbit-2-2", "octahedron"])
@settings(max_examples=10, deadline=None)
@given(data=st.data())
def test_group_does_not_depend_on_vertex_or_facet_order(name, data):
    theory = builtin_theory(name)
    vertex_order = data.draw(st.permutations(range(len(theory.extreme_points))))
    facet_order = data.draw(st.permutations(range(len(theory.facets))))
    shuffled = replace(
        theory,
        name=f"{name}-shuffled",
        extreme_points=tuple(theory.extreme_points[i] for i in vertex_order),
        facets=tuple(theory.facets[k] for k in facet_order),
    )
    group = automorphism_group(shuffled)
    assert group.signature == _group_of(name).signature
    assert identify(group) == identify(_group_of(name))


@pytest.mark.parametrize("name", ["gbit-3-2", "octahedron", "spekkens"])
def test_automorphisms_permute_the_facets(name):
    theory = builtin_theory(name)
    facets = _facet_vertex_sets(theory)
    for perm in _group_of(name).permutations:
        images = [frozenset(perm[i] for i in f) for f in facets]
        assert sorted(facets.index(f) for f in images) == list(range(len(facets)))


@pytest.mark.parametrize("fixture", ["gbit32_group", "gbit42_group"])
def test_gbit_representatives_are_signed_block_permutations(request, fixture):
    group = request.getfixturevalue(fixture)
    blocks = group.theory.layout.block_count
    for t in group.elements:
        assert all(sorted(row) == [0] * (2 * blocks - 1) + [1] for row in t.matrix)
        sources = t.source_coordinates()
        signed = [[0] * blocks for _ in range(blocks)]
        for j in range(blocks):
            plus, minus = sources[2 * j], sources[2 * j + 1]
            assert plus // 2 == minus // 2 and plus != minus
            signed[j][plus // 2] = 1 if plus % 2 == 0 else -1
        assert all(sum(abs(x) for x in row) == 1 for row in signed)
        assert all(sum(abs(row[k]) for row in signed) == 1 for k in range(blocks))


def test_elements_are_ordered_by_vertex_action(gbit32_group):
    perms = gbit32_group.permutations
    assert perms == tuple(sorted(perms))
    assert perms[0] == tuple(range(8))
    assert gbit32_group.identity.source_coordinates() == tuple(range(6))
    actions = [gbit32_group.theory.vertex_permutation(t) for t in gbit32_group.elements]
    assert tuple(actions) == perms
