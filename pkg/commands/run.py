"""
run: one trial (sample, train, exact risk, bounds, violation flags).

Writes trial.json and trials.csv (one row) under <output_dir>/<run_key>/ and prints
measured values against their bounds. Exit 1 if a deterministic lemma is violated.
"""

from experiments.results_io import trial_row, write_json, write_trials_csv
from experiments.trial import DETERMINISTIC, run_trial
from utils.cache_paths import trial_json_path, trials_csv_path
from utils.logging_utils import format_table, ts_print

from . import EXIT_FAILED, EXIT_OK
from .common import add_common_arguments, guarded, load_config, run_key_for, trial_config

_MEASURED_VS_BOUND = (
    ("pop_risk", "upper_risk"),
    ("pop_risk", "instance_lower"),
    ("pop_risk", "lower_risk"),
    ("w_norm", "norm"),
    ("emp_risk", "opt_error"),
    ("emp_risk", "sgd_empirical"),
)


def add_arguments(parser):
    add_common_arguments(parser)


def results_table(result) -> str:
    rows = []
    for measured, bound in _MEASURED_VS_BOUND:
        rep = result.bounds.get(bound)
        if rep is None:
            continue
        value = rep.value if rep.feasible else "infeasible"
        rows.append((bound, measured, result.measured[measured], value))
    for name, v in sorted(result.violations.items()):
        rows.append((f"check:{name}", v.kind, v.slack, "VIOLATED" if v.violated else "ok"))
    return format_table(["bound", "measured", "value", "bound_value"], rows)


def run(args) -> int:
    def body() -> int:
        cfg = load_config(args)
        tc = trial_config(cfg)
        run_key = run_key_for("run", cfg)
        ts_print(f"🚀 run {run_key} (seed {cfg.seed})")
        result = run_trial(tc, cfg.seed)
        write_json({"run_key": run_key, "trial": result.to_dict()}, trial_json_path(cfg.output_dir, run_key))
        write_trials_csv([trial_row(0, 0, result)], trials_csv_path(cfg.output_dir, run_key))
        print(results_table(result))
        broken = [name for name, v in result.violations.items() if v.kind == DETERMINISTIC and v.violated]
        if broken:
            ts_print(f"❌ Deterministic checks violated: {', '.join(sorted(broken))}")
            return EXIT_FAILED
        ts_print(f"✅ Results saved to {trial_json_path(cfg.output_dir, run_key).parent}")
        return EXIT_OK

    return guarded(body)
