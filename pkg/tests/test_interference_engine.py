import csv
from dataclasses import replace

import pytest

from src.engines.interference_engine import (
    InterferenceTable,
    hadamard_conjugates,
    commutes,
    hadamard_for,
    indistinguishable_partition,
    interference_table,
    locality_admissible,
    run_circuit,
)
from src.engines.phase_engine import phase_group
from src.engines.symmetry_engine import automorphism_group
from src.models.group import Group
from src.models.transform import Transform, compose
from src.exceptions import PreconditionError, UnsupportedError
from src.repositories.theory_file_repo import dump_theory, parse_theory_text
from src.repositories.transforms_repo import (
    decoherence_map,
    gbit_hadamard,
    spekkens_hadamard,
    square_phase_elements,
)


def _golden_rows(golden, name):
    with open(golden / name, newline="") as f:
        rows = list(csv.reader(f))
    return [(row[0], tuple(row[1:])) for row in rows[1:]]


def _table(theory, group, label="Z"):
    m = theory.find_measurement(label)
    return interference_table(theory, hadamard_for(theory), phase_group(theory, m, group), m)


def test_three_cube_z_table_matches_golden(golden, gbit32, gbit32_group):
    table = _table(gbit32, gbit32_group)
    assert [(r.label, r.symbolic_row) for r in table.rows] == _golden_rows(golden, "gbit_z_interference.csv")
    assert table.nontrivial
    assert table.symbolic


def test_three_cube_partition(gbit32, gbit32_group):
    table = _table(gbit32, gbit32_group)
    assert indistinguishable_partition(table) == [["g1", "g6"], ["g2", "g5"], ["g3", "g8"], ["g4", "g7"]]


def test_octahedron_reuses_the_square_labels(golden, octa):
    table = _table(octa, automorphism_group(octa))
    assert [(r.label, r.symbolic_row) for r in table.rows] == _golden_rows(golden, "gbit_z_interference.csv")


def test_spekkens_z_table_matches_golden(golden, spekkens, spekkens_group):
    table = _table(spekkens.theory, spekkens_group)
    assert [(r.label, r.symbolic_row) for r in table.rows] == _golden_rows(golden, "spekkens_z_interference.csv")
    assert indistinguishable_partition(table) == [["g1234"], ["g2134"], ["g1243"], ["g2143"]]


def test_conjugates_match_golden(golden, gbit32):
    assert hadamard_conjugates(gbit32) == _golden_rows(golden, "hadamard_conjugates.csv")


def test_conjugates_need_the_three_cube(octa):
    with pytest.raises(PreconditionError):
        hadamard_conjugates(octa)


def test_classical_bit_shows_no_interference(classical2):
    table = _table(classical2, automorphism_group(classical2), "M0")
    assert len(table.rows) == 1
    assert not table.nontrivial


def test_unregistered_beamsplitter(gbit42):
    with pytest.raises(UnsupportedError):
        hadamard_for(gbit42)


def test_irreversible_element_gives_numeric_rows(octa):
    z = octa.find_measurement("Z")
    row = run_circuit(octa, hadamard_for(octa), "D", decoherence_map(), z)
    assert row.symbolic_row is None
    assert all(s.startswith("(") and s.endswith(").s") for s in row.outcome_strings())
    for v in octa.vectors:
        assert sum(row.evaluate(v)) == 1
    with pytest.raises(UnsupportedError):
        indistinguishable_partition(InterferenceTable(octa.name, z, (row,)))


def test_square_flips_do_not_commute_with_rotations(gbit32):
    g = square_phase_elements()
    assert not commutes(g[0], g[4], gbit32)
    assert commutes(g[0], g[1], gbit32)


def test_locality_rejects_non_commuting_branches(gbit32):
    g = square_phase_elements()
    z = gbit32.find_measurement("Z")
    report = locality_admissible([g[0]], [g[4]], gbit32, z, hadamard_for(gbit32))
    assert not report.admissible
    assert report.witness == ("g1", "g5")
    assert report.state is not None
    assert report.statistics_ab != report.statistics_ba


def test_locality_accepts_the_rotation_subgroup(gbit32):
    rotations = square_phase_elements()[:4]
    report = locality_admissible(rotations, rotations, gbit32, gbit32.find_measurement("Z"), hadamard_for(gbit32))
    assert report.admissible
    assert report.witness is None


def test_spekkens_group_has_no_quarter_turn(octa, spekkens_group):
    quarter_turn = square_phase_elements()[0]
    assert octa.vertex_permutation(quarter_turn) is not None
    assert spekkens_group.permutation_of(quarter_turn) is None


def test_spekkens_beamsplitter_is_an_allowed_transform(spekkens, spekkens_group):
    assert hadamard_for(spekkens.theory) == spekkens_hadamard()
    assert spekkens_group.permutation_of(spekkens_hadamard()) is not None


@pytest.mark.parametrize("hadamard", [gbit_hadamard(), spekkens_hadamard()])
def test_beamsplitters_are_involutions(hadamard):
    assert compose(hadamard, hadamard).matrix == Transform.identity(6).matrix


def test_conjugates_leave_the_x_block_alone():
    h = gbit_hadamard()
    for g in square_phase_elements():
        sources = compose(h, compose(g, h)).source_coordinates()
        assert sources[:2] == (0, 1)


def test_conjugation_preserves_the_group_structure(gbit32, gbit32_group):
    phase = phase_group(gbit32, gbit32.find_measurement("Z"), gbit32_group)
    h = gbit_hadamard()
    conjugated = Group.from_permutations(
        gbit32,
        [gbit32.vertex_permutation(compose(h, compose(g, h))) for g in phase.group.elements],
    )
    assert conjugated.signature == phase.group.signature
    assert set(conjugated.permutations) != set(phase.group.permutations)


def test_builtin_transforms_follow_the_theory_not_its_name(gbit32, octa):
    reloaded = parse_theory_text(dump_theory(gbit32))
    assert hadamard_for(reloaded) == gbit_hadamard()
    assert hadamard_conjugates(reloaded) == hadamard_conjugates(gbit32)
    impostor = replace(octa, name="gbit-3-2")
    with pytest.raises(UnsupportedError):
        hadamard_for(impostor)
    with pytest.raises(PreconditionError):
        hadamard_conjugates(impostor)
