import json

import pytest

from src.exceptions import ParseError, TheoryValidationError
from src.models.theory import TransformPolicy
from src.repositories.theories_repo import builtin_theory
from src.repositories.theory_file_repo import dump_theory, load_theory, parse_theory_text


@pytest.mark.parametrize("name", ["classical-2", "gbit-3-2", "spekkens"])
def test_exported_builtins_load_back(name):
    theory = builtin_theory(name)
    text = dump_theory(theory)
    loaded = parse_theory_text(text)
    assert loaded.vectors == theory.vectors
    assert [m.label for m in loaded.measurements] == [m.label for m in theory.measurements]
    assert dump_theory(loaded) == text


def test_spekkens_file_keeps_its_group():
    loaded = parse_theory_text(dump_theory(builtin_theory("spekkens")))
    assert loaded.transform_policy == TransformPolicy.EXPLICIT_GROUP
    assert len(loaded.explicit_transforms) == 24
    assert loaded.explicit_transforms[0].label == "g1234"


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_theory_text('{\n  "name": "x",\n  oops\n}')
    assert (info.value.line, info.value.column) == (3, 3)
    assert "line 3" in str(info.value)


def test_schema_errors_name_the_field():
    doc = json.loads(dump_theory(builtin_theory("classical-2")))
    del doc["distinguishable_count"]
    with pytest.raises(ParseError, match="distinguishable_count"):
        parse_theory_text(json.dumps(doc))


def test_non_rational_coordinates_are_rejected():
    doc = json.loads(dump_theory(builtin_theory("classical-2")))
    doc["extreme_points"][0][0] = "0.5"
    with pytest.raises(ParseError, match="extreme_points"):
        parse_theory_text(json.dumps(doc))


def test_unknown_schema_version():
    doc = json.loads(dump_theory(builtin_theory("classical-2")))
    doc["schema_version"] = 2
    with pytest.raises(ParseError, match="schema_version"):
        parse_theory_text(json.dumps(doc))


def test_duplicate_vertex_fails_validation():
    doc = json.loads(dump_theory(builtin_theory("classical-2")))
    doc["extreme_points"].append(doc["extreme_points"][0])
    with pytest.raises(TheoryValidationError):
        parse_theory_text(json.dumps(doc))


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_theory(str(tmp_path / "absent.json"))


def test_load_from_disk(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(dump_theory(builtin_theory("gbit-2-2")), encoding="utf-8")
    assert load_theory(str(path)).name == "gbit-2-2"
