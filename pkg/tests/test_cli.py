import json
from pathlib import Path

import pytest

from conftest import write_yaml
from sepgd import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

SMALL_SWEEP = """
tail: {family: exponential}
loss: logistic
distribution: small_t
gamma: 0.0625
T: 200
n: 50
trials: 8
seed: 5
sweep:
  T: [200, 400]
  n: [50, 100]
"""


def _only(root: Path, pattern: str) -> Path:
    found = sorted(root.rglob(pattern))
    assert len(found) == 1, found
    return found[0]


def _cli(*argv, out: Path):
    return main([*argv, "--output-dir", str(out)])


def test_validate_exponential(tmp_path):
    assert _cli("validate", "--config", str(CONFIGS / "validate_exponential.yaml"), out=tmp_path) == 0
    report = json.loads(_only(tmp_path, "validate.json").read_text(encoding="utf-8"))
    assert report["reports"]["passed"] is True
    assert report["run_key"].startswith("validate__big_t__exponential__quadratic_extension__gd__")


def test_validate_hinge_fails(tmp_path):
    assert _cli("validate", "--config", str(CONFIGS / "hinge_negative.yaml"), out=tmp_path) == 1
    report = json.loads(_only(tmp_path, "validate.json").read_text(encoding="utf-8"))
    assert "beta_smooth" in [c["name"] for c in report["reports"]["losses"]["hinge"]["checks"]
                             if not c["passed"]]


def test_missing_gamma_is_a_usage_error(tmp_path):
    path = write_yaml(tmp_path / "bad.yaml", "tail: {family: exponential}\nloss: logistic\n"
                                             "distribution: big_t\nT: 10\nn: 40\n")
    assert _cli("validate", "--config", str(path), out=tmp_path) == 2
    assert not list(tmp_path.rglob("*.json"))


def test_unknown_command_and_missing_config():
    with pytest.raises(SystemExit) as info:
        main(["train"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["run"])
    assert info.value.code == 2


def test_missing_config_file(tmp_path):
    assert _cli("run", "--config", str(tmp_path / "absent.yaml"), out=tmp_path) == 2


def test_run_is_byte_identical(tmp_path):
    args = ("run", "--config", str(CONFIGS / "run_bigT.yaml"), "--set", "T=300")
    assert _cli(*args, out=tmp_path / "a") == 0
    assert _cli(*args, out=tmp_path / "b") == 0
    for name in ("trial.json", "trials.csv"):
        a, b = _only(tmp_path / "a", name), _only(tmp_path / "b", name)
        assert a.relative_to(tmp_path / "a") == b.relative_to(tmp_path / "b")
        assert a.read_bytes() == b.read_bytes()
    trial = json.loads(_only(tmp_path / "a", "trial.json").read_text(encoding="utf-8"))
    assert trial["schema_version"] == 1
    assert trial["trial"]["measured"]["pop_risk"] > 0


def test_run_sgd(tmp_path):
    assert _cli("run", "--config", str(CONFIGS / "run_sgd.yaml"), "--set", "T=300", out=tmp_path) == 0
    trial = json.loads(_only(tmp_path, "trial.json").read_text(encoding="utf-8"))
    assert trial["trial"]["violations"]["regret_sgd"]["violated"] is False


def test_rates(tmp_path):
    assert _cli("rates", "--config", str(CONFIGS / "rates_polynomial.yaml"), "--all", out=tmp_path) == 0
    rates = json.loads(_only(tmp_path, "rates.json").read_text(encoding="utf-8"))["rates"]
    assert [r["family"] for r in rates] == ["polynomial", "exponential", "stretched_exponential"]
    assert rates[0]["slope_T_small_T"] == pytest.approx(-0.5)


def test_sweep_then_verify(tmp_path):
    config = write_yaml(tmp_path / "sweep.yaml", SMALL_SWEEP)
    out = tmp_path / "out"
    assert main(["sweep", "--config", str(config), "--output-dir", str(out), "--max-concurrent", "2",
                 "--no-grid"]) == 0
    sweep_file = _only(out, "sweep.json")
    for name in ("trials.csv", "cells.csv", "verify.json", "plotdata_T.csv", "plotdata_n.csv"):
        assert (sweep_file.parent / name).exists(), name
    sweep = json.loads(sweep_file.read_text(encoding="utf-8"))
    assert sweep["truncated"] is False
    assert len(sweep["cells"]) == 4
    assert main(["verify", "--sweep", str(sweep_file), "--output", str(tmp_path / "again.json")]) == 0
    assert json.loads((tmp_path / "again.json").read_text(encoding="utf-8"))["passed"] is True


def test_verify_rejects_wrong_schema(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps({"schema_version": 99, "cells": []}), encoding="utf-8")
    assert main(["verify", "--sweep", str(path)]) == 2
    assert main(["verify", "--sweep", str(tmp_path / "absent.json")]) == 2


def test_verify_flags_tampered_sweep(tmp_path):
    config = write_yaml(tmp_path / "sweep.yaml", SMALL_SWEEP)
    out = tmp_path / "out"
    assert main(["sweep", "--config", str(config), "--output-dir", str(out), "--no-grid"]) == 0
    sweep_file = _only(out, "sweep.json")
    data = json.loads(sweep_file.read_text(encoding="utf-8"))
    data["cells"][2]["mean_risk"] = data["cells"][2]["upper_bound"] * 10
    sweep_file.write_text(json.dumps(data), encoding="utf-8")
    assert main(["verify", "--sweep", str(sweep_file)]) == 1


def test_sweep_without_block_is_usage_error(tmp_path):
    assert _cli("sweep", "--config", str(CONFIGS / "run_bigT.yaml"), out=tmp_path) == 2


def test_events(tmp_path):
    assert _cli("events", "--config", str(CONFIGS / "events.yaml"), "--set", "events.samples=100000",
                out=tmp_path) in (0, 1)
    report = json.loads(_only(tmp_path, "events.json").read_text(encoding="utf-8"))
    assert report["events"]["A1"]["trials"] == 100000
    assert report["events"]["A1"]["exceeds_floor"] is True


def test_unwritable_output_dir_is_an_io_error(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    assert _cli("rates", "--config", str(CONFIGS / "rates_polynomial.yaml"), out=blocker) == 3
    assert _cli("rates", "--config", str(tmp_path / "absent.yaml"), out=blocker) == 2
