"""Model input files: parsing, validation errors, canonical serialization."""

import json

import pytest

from symcone.demos import DEMO_NAMES, demo_text, is_demo
from symcone.modelfile import (
    ModelFileError,
    ModelFileSpec,
    SystemSpec,
    parse_model_file,
    parse_model_text,
    serialize_model_spec,
    spec_to_record,
)

MINIMAL = """
{
  "schema_version": 1,
  "systems": [
    {"name": "one", "algebra": {"family": "complex", "size": 2},
     "tests": {"mode": "sampled", "count": 2, "seed": 7}}
  ]
}
"""


def test_minimal_file_parses():
    spec = parse_model_text(MINIMAL)
    assert len(spec.systems) == 1
    system = spec.systems[0]
    assert system.name == "one"
    assert system.algebra.dim == 4
    assert system.test_mode == "sampled"
    assert (system.test_count, system.test_seed) == (2, 7)
    assert not system.is_composite


def test_all_demos_parse():
    for name in DEMO_NAMES:
        assert is_demo(name)
        spec = parse_model_text(demo_text(name))
        assert spec.name == name
        assert spec.systems
    assert not is_demo("missing-demo")


def test_serialization_round_trip_is_idempotent():
    for name in DEMO_NAMES:
        spec = parse_model_text(demo_text(name))
        once = serialize_model_spec(spec)
        again = serialize_model_spec(parse_model_text(once))
        assert once == again
        assert once.endswith("\n")


def test_serialization_is_canonical_json():
    spec = parse_model_text(MINIMAL)
    text = serialize_model_spec(spec)
    data = json.loads(text)
    assert text == json.dumps(data, indent=2, sort_keys=True) + "\n"


def test_record_round_trip_preserves_fields():
    spec = parse_model_text(demo_text("qubit-pair"))
    record = spec_to_record(spec)
    back = parse_model_text(json.dumps(record))
    assert [s.name for s in back.systems] == [s.name for s in spec.systems]
    assert back.systems[2].composite_parts == ("qubit-a", "qubit-b")


def test_json_syntax_error_carries_position():
    with pytest.raises(ModelFileError) as err:
        parse_model_text('{\n  "schema_version": 1,\n  "systems": [}\n}')
    assert err.value.line == 3
    assert err.value.col is not None
    assert "line 3" in str(err.value)


def test_schema_version_is_checked():
    with pytest.raises(ModelFileError, match="schema_version"):
        parse_model_text('{"schema_version": 99, "systems": []}')
    with pytest.raises(ModelFileError, match="schema_version"):
        parse_model_text('{"systems": []}')


def test_unknown_fields_rejected():
    with pytest.raises(ModelFileError, match="unknown field"):
        parse_model_text('{"schema_version": 1, "systems": [], "extra": 1}')
    bad_system = MINIMAL.replace('"seed": 7}', '"seed": 7}, "bogus": true')
    with pytest.raises(ModelFileError, match="bogus"):
        parse_model_text(bad_system)


def test_unknown_family_names_the_tag():
    text = MINIMAL.replace('"complex"', '"sedenion"')
    with pytest.raises(ModelFileError, match="sedenion"):
        parse_model_text(text)


def test_empty_systems_rejected():
    with pytest.raises(ModelFileError, match="systems"):
        parse_model_text('{"schema_version": 1, "systems": []}')


def test_duplicate_names_rejected():
    spec = json.loads(MINIMAL)
    spec["systems"].append(dict(spec["systems"][0]))
    with pytest.raises(ModelFileError, match="duplicate"):
        parse_model_text(json.dumps(spec))


def test_composite_parts_must_be_earlier_systems():
    spec = json.loads(MINIMAL)
    spec["systems"].append(
        {"name": "pair", "composite": {"parts": ["one", "ghost"], "carrier": "candidate"}}
    )
    with pytest.raises(ModelFileError, match="ghost"):
        parse_model_text(json.dumps(spec))


def test_composite_takes_no_algebra():
    spec = json.loads(MINIMAL)
    spec["systems"].append(
        {
            "name": "pair",
            "algebra": {"family": "complex", "size": 2},
            "composite": {"parts": ["one", "one"], "carrier": "candidate"},
        }
    )
    with pytest.raises(ModelFileError, match="no algebra"):
        parse_model_text(json.dumps(spec))


def test_explicit_tests_and_states_are_validated():
    desc = {"family": "real", "size": 2}
    good = {
        "schema_version": 1,
        "systems": [
            {
                "name": "bit",
                "algebra": desc,
                "tests": {
                    "mode": "explicit",
                    "outcomes": [[[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]],
                },
                "states": [[0.5, 0.0, 0.5]],
            }
        ],
    }
    spec = parse_model_text(json.dumps(good))
    assert spec.systems[0].test_mode == "explicit"
    assert spec.systems[0].explicit_tests == [[[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]]
    assert spec.systems[0].states == [[0.5, 0.0, 0.5]]

    bad = json.loads(json.dumps(good))
    bad["systems"][0]["states"] = [[0.5, 0.0]]
    with pytest.raises(ModelFileError, match="dimension"):
        parse_model_text(json.dumps(bad))

    worse = json.loads(json.dumps(good))
    worse["systems"][0]["tests"]["outcomes"][0][0] = [1.0, "x", 0.0]
    with pytest.raises(ModelFileError, match="numbers"):
        parse_model_text(json.dumps(worse))


def test_expect_marks_are_validated():
    spec = json.loads(MINIMAL)
    spec["systems"][0]["expect"] = {"self_duality": "maybe"}
    with pytest.raises(ModelFileError, match="pass.*fail|fail.*pass"):
        parse_model_text(json.dumps(spec))
    spec["systems"][0]["expect"] = {"self_duality": "fail"}
    parsed = parse_model_text(json.dumps(spec))
    assert parsed.systems[0].expect == {"self_duality": "fail"}


def test_unknown_test_mode_rejected():
    text = MINIMAL.replace('"sampled"', '"psychic"')
    with pytest.raises(ModelFileError, match="psychic"):
        parse_model_text(text)


def test_parse_model_file_reads_disk(tmp_path):
    target = tmp_path / "model.json"
    target.write_text(MINIMAL, encoding="utf-8")
    spec = parse_model_file(target)
    assert spec.systems[0].name == "one"


def test_spec_objects_serialize_without_parsing():
    # A spec assembled in code (not parsed from text) serializes the same way.
    from symcone import make_algebra

    spec = ModelFileSpec(
        systems=[SystemSpec(name="s", algebra=make_algebra("spin", 3))],
        name="hand-built",
    )
    text = serialize_model_spec(spec)
    reparsed = parse_model_text(text)
    assert reparsed.systems[0].algebra == make_algebra("spin", 3)
