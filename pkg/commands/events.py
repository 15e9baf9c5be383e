"""events: Monte Carlo estimates of the big-T instance's sample-configuration events."""

from experiments.event_probs import estimate_event_probs
from experiments.results_io import write_json
from utils.cache_paths import report_path
from utils.config import EventsSpec
from utils.logging_utils import format_table, ts_print

from . import EXIT_FAILED, EXIT_OK
from .common import add_common_arguments, guarded, load_config, run_key_for


def add_arguments(parser):
    add_common_arguments(parser)


def run(args) -> int:
    def body() -> int:
        cfg = load_config(args)
        spec = cfg.events or EventsSpec()
        ts_print(f"🎲 events: n={spec.n}, {spec.samples} samples, seed {cfg.seed}")
        report = estimate_event_probs(cfg.gamma, spec.n, spec.samples, cfg.seed)
        rows = [(e.name, e.count, e.trials, e.estimate, e.ci_low, e.floor, e.exceeds_floor, e.analytic,
                 "-" if e.z_score is None else e.z_score)
                for e in report.events.values()]
        print(format_table(["event", "count", "trials", "estimate", "ci_low", "floor", "above_floor",
                            "analytic", "z"], rows))
        run_key = run_key_for("events", cfg)
        path = write_json({"run_key": run_key, **report.to_dict()}, report_path(cfg.output_dir, run_key, "events"))
        ts_print(f"{'✅' if report.passed else '❌'} report: {path}")
        return EXIT_OK if report.passed else EXIT_FAILED

    return guarded(body)
