import json

import pytest

from mrclab import config, golden
from mrclab.config import ConfigError, ExperimentConfig


def test_read_spec_forms(tmp_path):
    assert config.read_spec("quintic_X") == {"model": "builtin", "name": "quintic_X"}
    assert config.read_spec('{"model": "random_plane", "degree": 4}')["degree"] == 4
    f = tmp_path / "c.json"
    f.write_text('{"model": "builtin", "name": "quintic_Y"}')
    assert config.read_spec(str(f))["name"] == "quintic_Y"
    with pytest.raises(ConfigError):
        config.read_spec("not json")


def test_curve_models():
    X = config.curve_from_spec({"model": "builtin", "name": "quintic_X"}, 31)
    assert len(X.points) == 32 and X.regularity == 4
    P = config.curve_from_spec({"model": "parametric_rational", "forms": golden.QUINTIC_FORMS["quintic_Y"],
                                "n": 3, "degree": 5}, 31)
    assert P.regularity == 4  # computed from the curve diagram
    Q = config.curve_from_spec({"model": "random_plane", "degree": 4, "seed": 2}, 31)
    assert Q.genus == 3 and Q.regularity == 4
    eqs = [[{"exps": [2, 0, 0], "c": 1}, {"exps": [0, 1, 1], "c": -1}]]
    conic = config.curve_from_spec({"model": "complete_intersection", "n": 2, "genus": 0, "degree": 2,
                                    "equations": eqs}, 31)
    assert len(conic.points) == 32 and conic.regularity == 2
    R = config.curve_from_spec({"model": "reembed", "base": {"model": "random_plane", "degree": 4, "seed": 2},
                                "k": 2, "base_points": 0}, 101)
    assert (R.n, R.degree, R.regularity) == (5, 8, 3)


@pytest.mark.parametrize("spec", [
    {"model": "unknown"},
    {"model": "builtin", "name": "quintic_Z"},
    {"model": "parametric_rational", "forms": [[1, 0], [0, 1]], "degree": 3},
    {"model": "complete_intersection", "n": 2},
    {"model": "complete_intersection", "n": 2, "genus": 0, "degree": 2,
     "equations": [[{"exps": [2, 0, 0], "c": 1}, {"exps": [1, 0, 0], "c": 1}]]},
])
def test_bad_specs(spec):
    with pytest.raises(ConfigError):
        config.curve_from_spec(spec, 31)


def test_experiment_config(tmp_path):
    c = ExperimentConfig.from_dict({"curve": {"model": "builtin", "name": "quintic_X"}, "gamma": [26, 31], "prime": 53})
    assert c.gammas == [26, 27, 28, 29, 30] and 53 in c.ladder
    assert ExperimentConfig.from_dict({"curve": {}, "gamma": 28}).gammas == [28]
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"curve": {}, "gamma": 28, "colour": "red"})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"curve": {}, "gamma": [30, 30]})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"curve": {}, "gamma": 28, "expected": "maybe"})
    f = tmp_path / "e.json"
    f.write_text(json.dumps({"curve": "quintic_X", "gamma": 28, "samples": 7}))
    assert ExperimentConfig.load(f).samples == 7
    with pytest.raises(ConfigError):
        ExperimentConfig.load(tmp_path / "missing.json")
