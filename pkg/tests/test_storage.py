import json
import os

import numpy as np
import pytest

import storage
from models.base import InputError
from models.module import ValidationError, left_ideal_module, simple_module
from schemas.algebra import AlgebraSchema
from schemas.ideal import IdealSchema
from storage import (
    InvalidConfig,
    ParseError,
    load_config,
    load_ideal,
    load_module,
    load_points,
    save_json,
    save_module,
    save_points,
)
from tests.conftest import prime_algebra
from varieties.rank import rank_variety
from varieties.support import support_variety, support_variety_points


def write_text(path, text):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return str(path)


def test_module_file_round_trip(e3, tmp_path):
    module = left_ideal_module(e3, e3.generator(0) + e3.generator(1))[0]
    path = str(tmp_path / "module.json")
    text = save_module(module, path)
    loaded = load_module(path)
    assert loaded.algebra == e3
    assert np.array_equal(loaded.matrices, module.matrices)
    assert save_module(loaded, str(tmp_path / "again.json")) == text


def test_module_violating_relations_is_rejected(tmp_path):
    algebra = AlgebraSchema.from_algebra(prime_algebra(5, 2, 1, 4)).model_dump(by_alias=True)
    path = write_text(tmp_path / "bad.json", json.dumps({"algebra": algebra, "dim": 1, "matrices": [[[[1]]]]}))
    with pytest.raises(ValidationError) as info:
        load_module(path)
    assert info.value.violations == ["X1^2 != 0"]


def test_module_with_wrong_shape_is_rejected(tmp_path):
    algebra = AlgebraSchema.from_algebra(prime_algebra(5, 2, 1, 4)).model_dump(by_alias=True)
    path = write_text(tmp_path / "bad.json", json.dumps({"algebra": algebra, "dim": 2, "matrices": [[[[0]]]]}))
    with pytest.raises(ValidationError):
        load_module(path)


def test_parse_error_reports_the_line(tmp_path):
    path = write_text(tmp_path / "broken.json", '{\n  "p": 5,\n  oops\n}\n')
    with pytest.raises(ParseError) as info:
        load_module(path)
    assert info.value.line == 3
    assert str(info.value).startswith(f"{path}:3:")


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_module(str(tmp_path / "nothing.json"))


def test_points_are_streamed_past_the_threshold(e2, tmp_path, monkeypatch):
    monkeypatch.setattr(storage, "STREAM_THRESHOLD", 2)
    points = rank_variety(simple_module(e2), 1)
    path = str(tmp_path / "points.json")
    save_points(points, path)
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    assert len(lines) == 1 + len(points)
    assert json.loads(lines[0])["count"] == 6
    assert load_points(path) == points


def test_small_point_sets_are_one_document(e2, tmp_path):
    points = rank_variety(simple_module(e2), 2)
    path = str(tmp_path / "points.json")
    save_points(points, path)
    assert load_points(path) == points
    assert load_points(path).enumerated == 26


def test_truncated_point_stream(e2, tmp_path, monkeypatch):
    monkeypatch.setattr(storage, "STREAM_THRESHOLD", 2)
    path = str(tmp_path / "points.json")
    save_points(rank_variety(simple_module(e2), 1), path)
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    write_text(path, "\n".join(lines[:-1]) + "\n")
    with pytest.raises(ParseError):
        load_points(path)


def test_config_paths_resolve_against_the_config(e2, algebra_file, tmp_path):
    algebra_file(e2)
    path = write_text(tmp_path / "run.json", json.dumps({"algebraPath": "algebra.json", "extDegrees": [2, 1, 2]}))
    config = load_config(path)
    assert config.algebra_path == os.path.join(str(tmp_path), "algebra.json")
    assert config.ext_degrees == [1, 2]
    assert config.max_deg == config.degree_bound + 4 == 12
    assert storage.config_algebra(config) == e2


@pytest.mark.parametrize(
    "overrides",
    [
        {"degreeBound": 3},
        {"algebra": {"field": {"p": 5}, "a": 2, "c": 2}},
        {"maxDeg": 5, "degreeBound": 4},
        {"modules": ["missing.json"]},
        {"resolutionSteps": 4},
    ],
)
def test_invalid_configs(e2, algebra_file, tmp_path, overrides):
    algebra_file(e2)
    path = write_text(tmp_path / "run.json", json.dumps({"algebraPath": "algebra.json", **overrides}))
    with pytest.raises(InvalidConfig):
        load_config(path)


def test_config_must_be_an_object(tmp_path):
    with pytest.raises(InvalidConfig):
        load_config(write_text(tmp_path / "run.json", "[1, 2]"))


def test_ideal_file_round_trip(e2, tmp_path):
    ideal = support_variety(left_ideal_module(e2, e2.generator(0))[0], degree_bound=4)
    path = str(tmp_path / "ideal.json")
    save_json(IdealSchema.from_ideal(ideal), path)
    loaded = load_ideal(path)
    assert loaded.stabilized == ideal.stabilized
    assert [p.degree for p in loaded.generators] == [p.degree for p in ideal.generators]
    assert support_variety_points(loaded, 2) == support_variety_points(ideal, 2)


SHARED_IDEAL = {
    "degreeBound": 8,
    "stabilized": True,
    "generators": [{"monomials": [{"exps": [1, 1], "coeff": [1]}]}],
}


def test_ideal_without_a_field_takes_the_algebra_field(e2, tmp_path):
    path = write_text(tmp_path / "ideal.json", json.dumps(SHARED_IDEAL))
    ideal = load_ideal(path, e2)
    assert ideal.field == e2.field
    assert ideal.c == 2
    assert ideal.effective_bound == 8
    assert ideal.generator_degrees == [2]
    assert len(support_variety_points(ideal, 1)) == 2


def test_ideal_without_a_field_or_algebra(tmp_path):
    path = write_text(tmp_path / "ideal.json", json.dumps(SHARED_IDEAL))
    with pytest.raises(InvalidConfig):
        load_ideal(path)


def test_ideal_in_the_wrong_number_of_variables(c3, tmp_path):
    path = write_text(tmp_path / "ideal.json", json.dumps(SHARED_IDEAL))
    with pytest.raises(InputError):
        load_ideal(path, c3)


def test_points_without_a_field_take_the_extension_of_the_algebra_field(e2, tmp_path):
    points = rank_variety(simple_module(e2), 2)
    shared = {"extDegree": 2, "c": 2, "points": points.as_lists(), "enumerated": 26}
    path = write_text(tmp_path / "points.json", json.dumps(shared))
    assert load_points(path, e2) == points
    with pytest.raises(InvalidConfig):
        load_points(path)


def test_points_with_the_wrong_coefficient_width(e2, tmp_path):
    shared = {"extDegree": 2, "c": 2, "points": [[[1], [0]]], "enumerated": 26}
    path = write_text(tmp_path / "points.json", json.dumps(shared))
    with pytest.raises(InputError):
        load_points(path, e2)
