from fractions import Fraction
from functools import lru_cache

import pytest

from src.engines.phase_engine import (
    canonical_phase_map,
    exclusion_witnesses,
    is_classical,
    is_phase_dynamics,
    measurement_refines,
    mixture_of_phase_elements,
    no_exchange_of_outcomes,
    phase_group,
    theorem_check,
    verify_maximal,
    verify_phase_group,
)
from src.engines.symmetry_engine import allowed_group, automorphism_group, orientation_subgroup
from src.exceptions import PreconditionError, UsageError, WeightError
from src.repositories.theories_repo import builtin_theory
from src.repositories.transforms_repo import (
    decoherence_map,
    gbit_hadamard,
    measurement_setting_map,
    square_phase_elements,
)

HALF = Fraction(1, 2)


@pytest.mark.parametrize(
    "label, order, name",
    [
        ("Z", 8, "D4_order8"),
        ("diagonal", 6, "S3"),
        ("unit", 48, "B3_order48"),
    ],
)
def test_three_cube_phase_groups(gbit32, gbit32_group, label, order, name):
    result = phase_group(gbit32, gbit32.find_measurement(label), gbit32_group)
    assert result.group.order == order
    assert result.name.label == name
    assert verify_phase_group(result)


def test_four_cube_phase_groups(gbit42, gbit42_group):
    fiducial = phase_group(gbit42, gbit42.find_measurement("X0"), gbit42_group)
    assert fiducial.group.order == 48
    assert not fiducial.group.is_abelian
    assert fiducial.name.label == "B3_order48"
    diagonal = phase_group(gbit42, gbit42.find_measurement("diagonal"), gbit42_group)
    assert diagonal.group.order == 24
    assert diagonal.name.label == "S4"


@lru_cache(maxsize=None)
def _full_group(name):
    return automorphism_group(builtin_theory(name))


def _ambient(name, exclude_reflections):
    theory = builtin_theory(name)
    group = _full_group(name)
    return theory, orientation_subgroup(group, theory) if exclude_reflections else group


@pytest.mark.parametrize(
    "name, label, exclude_reflections, order, group_name",
    [
        ("gbit-3-2", "Z", False, 8, "D4_order8"),
        ("gbit-3-2", "Z", True, 4, "C4"),
        ("gbit-3-2", "diagonal", True, 3, "C3"),
        ("gbit-3-2", "unit", True, 24, "S4"),
        ("gbit-3-2", "four", False, 2, "C2"),
        ("gbit-3-2", "four", True, 1, "trivial"),
        ("gbit-4-2", "X0", False, 48, "B3_order48"),
        ("gbit-4-2", "diagonal", False, 24, "S4"),
        ("gbit-4-2", "four", False, 8, "D4_order8"),
        ("gbit-4-2", "four", True, 4, "C4"),
        ("gbit-4-2", "six", False, 2, "C2"),
        ("gbit-4-2", "six", True, 1, "trivial"),
        ("spekkens", "Z", False, 4, "Z2xZ2"),
        ("spekkens", "diagonal", False, 6, "S3"),
        ("classical-4", "parity", False, 4, "Z2xZ2"),
        ("classical-4", "M0", False, 1, "trivial"),
    ],
)
def test_phase_groups_are_maximal(name, label, exclude_reflections, order, group_name):
    theory, ambient = _ambient(name, exclude_reflections)
    result = phase_group(theory, theory.find_measurement(label), ambient)
    assert result.group.order == order
    assert result.name.label == group_name
    assert verify_phase_group(result)
    witnesses = exclusion_witnesses(result, ambient)
    assert len(witnesses) == ambient.order - order
    assert not set(witnesses) & set(result.group.permutations)


def test_coarse_classical_measurement_has_phases():
    theory, ambient = _ambient("classical-4", False)
    parity = theory.find_measurement("parity")
    m0 = theory.find_measurement("M0")
    coarse = phase_group(theory, parity, ambient).group.order
    fine = phase_group(theory, m0, ambient).group.order
    assert coarse == 4 > fine == 1
    assert not verify_maximal(theory, parity)
    assert verify_maximal(theory, m0)


def test_spekkens_phase_groups(spekkens, spekkens_group):
    theory = spekkens.theory
    z = phase_group(theory, theory.find_measurement("Z"), spekkens_group)
    assert z.group.order == 4
    assert z.name.label == "Z2xZ2"
    diagonal = phase_group(theory, theory.find_measurement("diagonal"), spekkens_group)
    assert diagonal.group.order == 6
    assert diagonal.name.label == "S3"


def test_classical_fiducial_phase_group_is_trivial(classical2):
    result = phase_group(classical2, classical2.find_measurement("M0"), automorphism_group(classical2))
    assert result.is_trivial
    assert result.name.label == "trivial"


def test_reflection_free_three_cube_phase_groups_are_abelian(gbit32, gbit32_group):
    rotations = orientation_subgroup(gbit32_group, gbit32)
    for label in ("X", "Y", "Z", "diagonal", "four"):
        assert phase_group(gbit32, gbit32.find_measurement(label), rotations).group.is_abelian
    unit = phase_group(gbit32, gbit32.find_measurement("unit"), rotations)
    assert unit.group.order == 24
    assert not unit.group.is_abelian


def test_exclusion_witnesses_cover_the_complement(gbit32, gbit32_group):
    result = phase_group(gbit32, gbit32.find_measurement("Z"), gbit32_group)
    witnesses = exclusion_witnesses(result, gbit32_group)
    assert len(witnesses) == 40
    assert not set(witnesses) & set(result.group.permutations)


def test_maximal_measurements(gbit32):
    assert verify_maximal(gbit32, gbit32.find_measurement("Z"))
    assert verify_maximal(gbit32, gbit32.find_measurement("diagonal"))
    assert not verify_maximal(gbit32, gbit32.find_measurement("unit"))


def test_classicality(classical2, gbit32, spekkens):
    assert is_classical(classical2)
    assert is_classical(builtin_theory("classical-4"))
    assert not is_classical(gbit32)
    assert not is_classical(spekkens.theory)


def test_canonical_map_on_classical_bit_is_identity(classical2):
    canonical = canonical_phase_map(classical2, classical2.find_measurement("M0"))
    assert canonical.acts_as_identity
    assert canonical.witness is None
    assert canonical.holds
    assert "c" not in canonical.obligations


def test_canonical_map_collapses_the_cube(gbit32):
    z = gbit32.find_measurement("Z")
    canonical = canonical_phase_map(gbit32, z)
    assert canonical.obligations == {"a": True, "b": True, "c": True}
    assert canonical.witness == (0, 2)
    images = {canonical.transform.apply(v) for v in gbit32.vectors}
    assert len(images) == 2


def test_canonical_map_on_spekkens_collapses_x_states(spekkens):
    theory = spekkens.theory
    canonical = canonical_phase_map(theory, theory.find_measurement("Z"))
    assert canonical.holds
    assert canonical.witness == (0, 1)
    assert canonical.transform.apply(theory.vectors[0]) == (HALF,) * 6


def test_canonical_map_preconditions(gbit32, gbit42):
    with pytest.raises(PreconditionError):
        canonical_phase_map(gbit32, gbit32.find_measurement("diagonal"))
    with pytest.raises(PreconditionError):
        canonical_phase_map(gbit42, gbit42.find_measurement("four"))


@pytest.mark.parametrize(
    "name",
    ["classical-2", "classical-3", "classical-4", "gbit-2-2", "gbit-3-2", "gbit-4-2", "gbit-2-3", "spekkens"],
)
def test_phase_dynamics_dichotomy(name):
    theory = builtin_theory(name)
    report = theorem_check(theory, allowed_group(theory))
    assert report.passed, report.detail
    assert report.is_classical == name.startswith("classical")
    if report.is_classical:
        assert set(report.maximal_phase_orders.values()) == {1}
        assert report.witness is None
    else:
        assert report.witness is not None


def test_decoherence_is_irreversible_phase_dynamics(octa):
    report = is_phase_dynamics(octa, octa.find_measurement("Z"), decoherence_map())
    assert report.preserves_measurement
    assert report.preserves_state_space
    assert not report.is_reversible
    assert report.changed_states == (0, 1, 2, 3)


def test_measurement_setting_map_on_the_cube(gbit32):
    p = measurement_setting_map()
    report = is_phase_dynamics(gbit32, gbit32.find_measurement("Z"), p)
    assert report.preserves_measurement
    assert report.preserves_state_space
    assert not report.is_reversible
    assert len(report.changed_states) == 4
    assert all(p.apply(v)[:2] == (1, 0) for v in gbit32.vectors)


def test_mixtures_of_phase_elements(gbit32, gbit32_group):
    phase = phase_group(gbit32, gbit32.find_measurement("Z"), gbit32_group)
    g = square_phase_elements()
    half_turn = mixture_of_phase_elements([(HALF, phase.group.identity), (HALF, g[1])], phase)
    for v in gbit32.vectors:
        assert half_turn.apply(v) == (HALF, HALF, HALF, HALF) + v[4:]
    assert mixture_of_phase_elements([(Fraction(1), g[4])], phase) is g[4]
    report = is_phase_dynamics(gbit32, phase.measurement, half_turn)
    assert report.preserves_measurement and report.preserves_state_space


@pytest.mark.parametrize(
    "weights",
    [
        [(Fraction(3, 2), 0), (-HALF, 1)],
        [(HALF, 0), (Fraction(1, 3), 1)],
        [],
    ],
)
def test_mixture_rejects_bad_weights(gbit32, gbit32_group, weights):
    phase = phase_group(gbit32, gbit32.find_measurement("Z"), gbit32_group)
    g = square_phase_elements()
    with pytest.raises(WeightError):
        mixture_of_phase_elements([(w, g[k]) for w, k in weights], phase)


def test_mixture_rejects_elements_outside_the_phase_group(gbit32, gbit32_group):
    phase = phase_group(gbit32, gbit32.find_measurement("Z"), gbit32_group)
    with pytest.raises(WeightError):
        mixture_of_phase_elements([(Fraction(1), gbit_hadamard())], phase)


def test_outcome_exchange(gbit32, gbit32_group, spekkens, spekkens_group):
    assert no_exchange_of_outcomes(gbit32, gbit32.find_measurement("Z"), gbit32_group) is not None
    theory = spekkens.theory
    assert no_exchange_of_outcomes(theory, theory.find_measurement("diagonal"), spekkens_group) is None
    with pytest.raises(UsageError):
        no_exchange_of_outcomes(gbit32, gbit32.find_measurement("unit"), gbit32_group)


def test_refinement_shrinks_the_phase_group(gbit32, gbit32_group):
    x = gbit32.find_measurement("X")
    unit = gbit32.find_measurement("unit")
    assert measurement_refines(gbit32, x, unit)
    assert not measurement_refines(gbit32, unit, x)
    fine = set(phase_group(gbit32, x, gbit32_group).group.permutations)
    coarse = set(phase_group(gbit32, unit, gbit32_group).group.permutations)
    assert fine <= coarse


def test_classical_pair_refinement():
    theory = builtin_theory("classical-4")
    m0 = theory.find_measurement("M0")
    assert measurement_refines(theory, m0, theory.find_measurement("parity"))
    assert measurement_refines(theory, m0, theory.find_measurement("first-bit"))
    assert not measurement_refines(theory, theory.find_measurement("parity"), m0)
