from dataclasses import replace
from fractions import Fraction

import pytest

from src.exceptions import (
    BudgetExceededError,
    PreconditionError,
    UnknownTheoryError,
    UnsupportedError,
    UsageError,
)
from src.repositories import theories_repo
from src.repositories.theories_repo import (
    builtin_theory,
    matches_builtin,
    measurement_completeness,
    outcome_distribution,
    spekkens_measure_update,
    standard_measurements,
)
from src.repositories.transforms_repo import (
    decoherence_map,
    gbit_hadamard,
    measurement_setting_map,
    square_phase_elements,
)

HALF = Fraction(1, 2)


@pytest.mark.parametrize(
    "name, vertices, affine_dimension, n",
    [
        ("classical-2", 2, 1, 2),
        ("classical-4", 4, 3, 4),
        ("gbit-2-2", 4, 2, 2),
        ("gbit-3-2", 8, 3, 2),
        ("gbit-4-2", 16, 4, 2),
        ("gbit-2-3", 9, 4, 3),
        ("octahedron", 6, 3, 2),
        ("spekkens", 6, 3, 2),
    ],
)
def test_builtin_shapes(name, vertices, affine_dimension, n):
    theory = builtin_theory(name)
    assert len(theory.extreme_points) == vertices
    assert theory.affine_dimension == affine_dimension
    assert theory.distinguishable_count == n


def test_builtin_names_are_resolved_or_rejected():
    with pytest.raises(UnsupportedError):
        builtin_theory("qubit")
    with pytest.raises(UnknownTheoryError):
        builtin_theory("boxworld")
    with pytest.raises(UsageError):
        builtin_theory("classical-1")


def test_gbit_dimension_is_bounded(monkeypatch):
    monkeypatch.setattr(theories_repo, "MAX_TOTAL_DIM", 6)
    with pytest.raises(BudgetExceededError):
        theories_repo.gbit.__wrapped__(4, 2)


def test_gbit_measurement_labels(gbit32, gbit42):
    assert [m.label for m in standard_measurements(gbit32)] == ["X", "Y", "Z", "diagonal", "unit", "four"]
    assert [m.label for m in gbit42.measurements][-2:] == ["four", "six"]


def test_four_effect_sets_are_complete(gbit32, gbit42):
    for theory in (gbit32, gbit42):
        assert measurement_completeness(theory, theory.find_measurement("four")) == [1]
    assert measurement_completeness(gbit42, gbit42.find_measurement("six")) == [1]


def test_classical_bit_pair_measurements():
    theory = builtin_theory("classical-4")
    parity = theory.find_measurement("parity")
    assert parity.statistics(theory.vectors[3]) == (1, 0)
    assert theory.layout.blocks[0].outcomes == ("00", "01", "10", "11")


def test_spekkens_bit_structure(spekkens):
    assert len(spekkens.ontic_vertices) == 4
    assert len(spekkens.theory.explicit_transforms) == 24
    for point, (a, b) in zip(spekkens.theory.vectors, spekkens.pairs):
        mix = [(x + y) / 2 for x, y in zip(spekkens.ontic_vertices[a].coords, spekkens.ontic_vertices[b].coords)]
        assert tuple(mix) == point


def test_spekkens_measurement_update(spekkens):
    x_plus = spekkens.epistemic_state("X", 1)
    assert outcome_distribution(spekkens, x_plus, "Z") == (HALF, HALF)
    assert spekkens_measure_update(spekkens, x_plus, "Z", -1) == spekkens.epistemic_state("Z", -1)
    with pytest.raises(PreconditionError):
        spekkens_measure_update(spekkens, x_plus, "X", -1)
    with pytest.raises(UsageError):
        spekkens_measure_update(spekkens, x_plus, "W", 1)


def test_named_transforms(gbit32):
    for g in square_phase_elements():
        assert gbit32.vertex_permutation(g) is not None
    assert gbit32.vertex_permutation(gbit_hadamard()) is not None
    assert not decoherence_map().reversible
    assert not measurement_setting_map().reversible


def test_matches_builtin_compares_content_not_names():
    octa = builtin_theory("octahedron")
    assert matches_builtin(octa)
    assert matches_builtin(octa, "octahedron")
    assert not matches_builtin(octa, "spekkens")
    assert not matches_builtin(replace(octa, name="spekkens"))
    assert not matches_builtin(replace(octa, name="gbit-3-2"))
    assert not matches_builtin(replace(octa, name="boxworld"))
    assert matches_builtin(builtin_theory("spekkens"))
