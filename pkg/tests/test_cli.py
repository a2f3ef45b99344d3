import json
import os

import pytest
from click.testing import CliRunner

from main import cli
from storage import load_points


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, ["--quiet", *args])

    return invoke


@pytest.fixture
def workspace(e2, algebra_file, tmp_path):
    algebra = algebra_file(e2)
    config = tmp_path / "run.json"
    config.write_text(json.dumps({
        "algebraPath": "algebra.json",
        "extDegrees": [1],
        "degreeBound": 4,
        "maxDeg": 8,
        "resolutionSteps": 8,
        "periodicityBound": 4,
    }))
    return {"algebra": algebra, "config": str(config), "dir": tmp_path}


def test_field(run):
    result = run("field", "--p", "5")
    assert result.exit_code == 0
    assert json.loads(result.output) == {"p": 5, "e": 1, "modulus": [0, 1]}


def test_field_rejects_a_composite_characteristic(run):
    assert run("field", "--p", "4").exit_code == 2


def test_algebra_defaults_q(run):
    result = run("algebra", "--p", "5", "--a", "2", "--c", "2", "--labels")
    assert result.exit_code == 0
    first, labels = result.output.strip().splitlines()
    assert json.loads(first)["q"] == [4]
    assert labels == "1 x2 x1 x1*x2"


def test_module_commands(run, workspace):
    regular = str(workspace["dir"] / "regular.json")
    assert run("module", "regular", "--algebra", workspace["algebra"], "--out", regular).exit_code == 0
    result = run("module", "validate", regular)
    assert result.exit_code == 0
    assert "dimension 4" in result.output
    ideal = str(workspace["dir"] / "ideal.json")
    assert run("module", "ideal", "--algebra", workspace["algebra"], "--lambda", "1,0", "--out", ideal).exit_code == 0
    assert json.loads((workspace["dir"] / "ideal.json").read_text())["dim"] == 2
    assert run("module", "ideal", "--algebra", workspace["algebra"], "--lambda", "1").exit_code == 2


def test_rank_variety_and_betti(run, workspace):
    simple = str(workspace["dir"] / "k.json")
    assert run("module", "simple", "--algebra", workspace["algebra"], "--out", simple).exit_code == 0
    points = str(workspace["dir"] / "points.json")
    assert run("rank-variety", "--module", simple, "--out", points).exit_code == 0
    assert len(load_points(points)) == 6
    result = run("betti", "--module", simple, "--steps", "8", "--complexity")
    assert result.exit_code == 0
    assert json.loads(result.output) == {"betti": list(range(1, 10)), "complexity": 2}


def test_mono(run, workspace):
    result = run("mono", "--algebra", workspace["algebra"], "--lambda", "1,0", "--mu", "0,1")
    assert result.exit_code == 0
    out = json.loads(result.output)
    assert out["sourceDim"] == 2 and out["targetDim"] == 4 and out["injective"]
    assert run("mono", "--algebra", workspace["algebra"], "--lambda", "1,0", "--mu", "1,0").exit_code == 2


def test_verify_syzygy_passes(run, workspace):
    result = run("verify", "syzygy", "--config", workspace["config"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["failed"] == 0
    assert report["exitCode"] == 0
    assert len(report["checks"]) == 3


def test_verify_perp_on_a_non_periodic_entry(run, workspace):
    assert run("verify", "perp", "--config", workspace["config"], "--entry", "k").exit_code == 2


def test_support_variety_needs_one_input(run, workspace):
    assert run("support-variety").exit_code == 2


def test_catalog_command(run, workspace):
    out_dir = str(workspace["dir"] / "catalog")
    result = run("catalog", "--algebra", workspace["algebra"], "--out-dir", out_dir)
    assert result.exit_code == 0
    assert os.path.exists(os.path.join(out_dir, "index.json"))
    assert result.output.splitlines()[0].startswith("k\tsimple")


def test_support_variety_from_an_ideal_without_a_field(run, workspace):
    ideal = workspace["dir"] / "ideal.json"
    ideal.write_text(json.dumps({
        "degreeBound": 8,
        "stabilized": True,
        "generators": [{"monomials": [{"exps": [1, 1], "coeff": [1]}]}],
    }))
    points = str(workspace["dir"] / "zeros.json")
    assert run("support-variety", "--ideal", str(ideal)).exit_code == 2
    result = run("support-variety", "--ideal", str(ideal), "--algebra", workspace["algebra"],
                 "--points", "1", "--out", points)
    assert result.exit_code == 0
    assert len(load_points(str(workspace["dir"] / "zeros.points.1.json"))) == 2
