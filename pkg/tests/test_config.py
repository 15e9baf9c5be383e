import json

import pytest
import yaml

from commands.common import sweep_config, trial_config
from conftest import write_yaml
from utils.config import apply_overrides, build_run_config, config_echo, load_run_config
from utils.errors import ConfigError
from utils.run_key import build_run_key

BASE = """
tail: {family: exponential}
loss: quadratic_extension
distribution: big_t
gamma: 0.0625
T: 100
n: 70
"""


def test_yaml_defaults(tmp_path):
    cfg = load_run_config(write_yaml(tmp_path / "run.yaml", BASE))
    assert cfg.distribution == {"kind": "big_t"}
    assert cfg.eta == "auto" and cfg.delta == 0.1 and cfg.K == 1e5
    assert cfg.algo == "gd" and cfg.seed == 0 and cfg.sweep is None


def test_json_config(tmp_path):
    data = {"tail": {"family": "polynomial", "alpha": 2}, "loss": "linear_extension",
            "distribution": {"kind": "small_t"}, "gamma": 0.0625, "T": 1000, "n": 200, "eps": 0.0625}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    cfg = load_run_config(path)
    assert cfg.tail == {"family": "polynomial", "alpha": 2}
    assert cfg.eps == 0.0625


@pytest.mark.parametrize("drop,field", [("gamma", "gamma"), ("T", "T"), ("loss", "loss")])
def test_missing_field_names_its_path(drop, field):
    data = yaml.safe_load(BASE)
    del data[drop]
    with pytest.raises(ConfigError) as info:
        build_run_config(data)
    assert info.value.field_path == field


@pytest.mark.parametrize("override,field", [
    ("tail.family=gaussian", "tail.family"),
    ("tail.family=polynomial", "tail.alpha"),
    ("delta=1.5", "delta"),
    ("algo=adam", "algo"),
    ("T=0", "T"),
    ("distribution={kind: custom}", "distribution.path"),
    ("sweep={T: [10], axis: gamma}", "sweep.axis"),
])
def test_invalid_fields(tmp_path, override, field):
    path = write_yaml(tmp_path / "run.yaml", BASE)
    with pytest.raises(ConfigError) as info:
        load_run_config(path, [override])
    assert info.value.field_path == field


def test_trials_below_sweep_minimum(tmp_path):
    path = write_yaml(tmp_path / "run.yaml", BASE + "trials: 5\nsweep: {T: [10, 20], min_trials: 100}\n")
    with pytest.raises(ConfigError) as info:
        load_run_config(path)
    assert info.value.field_path == "trials"


def test_overrides(tmp_path):
    path = write_yaml(tmp_path / "run.yaml", BASE)
    cfg = load_run_config(path, ["T=500", "tail.family=polynomial", "tail.alpha=3", "sweep.n=[40, 80]"])
    assert cfg.T == 500
    assert cfg.tail == {"family": "polynomial", "alpha": 3}
    assert cfg.sweep.n == (40, 80)
    with pytest.raises(ConfigError):
        apply_overrides({}, ["no-equals-sign"])
    with pytest.raises(ConfigError):
        apply_overrides({"T": 5}, ["T.x=1"])


def test_env_substitution(tmp_path, monkeypatch):
    path = write_yaml(tmp_path / "run.yaml", BASE.replace("T: 100", "T: ${SEPGD_TEST_T}"))
    monkeypatch.setenv("SEPGD_TEST_T", "250")
    assert load_run_config(path).T == 250
    monkeypatch.delenv("SEPGD_TEST_T")
    with pytest.raises(ConfigError) as info:
        load_run_config(path)
    assert info.value.field_path == "T"


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_run_config(tmp_path / "absent.yaml")


def test_output_dir_does_not_change_run_key(tmp_path):
    path = write_yaml(tmp_path / "run.yaml", BASE)
    a = load_run_config(path, output_dir=str(tmp_path / "a"))
    b = load_run_config(path, output_dir=str(tmp_path / "b"))
    assert build_run_key("run", config_echo(a)) == build_run_key("run", config_echo(b))
    assert build_run_key("run", config_echo(a)).startswith("run__big_t__exponential__quadratic_extension__gd__")
    c = load_run_config(path, ["seed=1"])
    assert build_run_key("run", config_echo(a)) != build_run_key("run", config_echo(c))


def test_trial_and_sweep_configs(tmp_path):
    path = write_yaml(tmp_path / "run.yaml", BASE + "trials: 3\nsweep: {T: [10, 20], n: [35, 70]}\n")
    cfg = load_run_config(path)
    tc = trial_config(cfg)
    assert tc.eta is None and tc.step_size == 0.5
    grid = sweep_config(cfg)
    assert [(c.T, c.n) for c in grid.cells()] == [(10, 35), (10, 70), (20, 35), (20, 70)]
    with pytest.raises(ConfigError):
        sweep_config(load_run_config(write_yaml(tmp_path / "plain.yaml", BASE)))


def test_custom_distribution_uses_its_margin(tmp_path, monkeypatch):
    dist = {"support": [[0.8, 0.5], [0.5, -0.25]], "probs": [0.5, 0.5], "w_star": [1.0, 0.0], "gamma": 0.5}
    (tmp_path / "dist.json").write_text(json.dumps(dist), encoding="utf-8")
    monkeypatch.setenv("SEPGD_DIST", str(tmp_path / "dist.json"))
    text = BASE.replace("distribution: big_t", "distribution:\n  kind: custom\n  path: ${SEPGD_DIST}")
    tc = trial_config(load_run_config(write_yaml(tmp_path / "run.yaml", text)))
    assert tc.gamma == 0.5
    assert tc.distribution().size == 2
