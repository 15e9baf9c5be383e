"""
validate: certify the configured tail (axioms) and loss (class membership).

Writes <output_dir>/<run_key>/validate.json; exit 0 iff every certificate passes.
"""

from typing import Any, Dict

from experiments.results_io import write_json
from losses.membership import check_loss_class
from tails.axioms import check_tail_axioms
from utils.cache_paths import report_path
from utils.logging_utils import format_table, ts_print

from . import EXIT_FAILED, EXIT_OK
from .common import add_common_arguments, build_loss, build_tail, guarded, load_config, run_key_for


def add_arguments(parser):
    add_common_arguments(parser)


def _print_report(report):
    rows = [(c.name, c.passed, c.worst_violation, c.at if c.at is not None else "-", c.detail)
            for c in report.checks]
    print(report.subject)
    print(format_table(["check", "passed", "worst_violation", "at_u", "detail"], rows))


def run(args) -> int:
    def body() -> int:
        cfg = load_config(args)
        phi = build_tail(cfg)
        run_key = run_key_for("validate", cfg)

        tail_report = check_tail_axioms(phi)
        _print_report(tail_report)
        reports: Dict[str, Any] = {"tail": tail_report.to_dict(), "losses": {}}
        passed = tail_report.passed

        kinds = [cfg.loss] + ([cfg.custom_loss] if cfg.custom_loss and cfg.custom_loss != cfg.loss else [])
        for kind in kinds:
            if not tail_report.passed and kind in ("quadratic_extension", "linear_extension"):
                reports["losses"][kind] = {"passed": False, "skipped": "tail failed its axioms"}
                continue
            membership = check_loss_class(build_loss(kind, phi, "custom_loss" if kind == cfg.custom_loss else "loss"),
                                          phi)
            _print_report(membership)
            reports["losses"][kind] = membership.to_dict()
            passed = passed and membership.passed
            if not membership.passed:
                ts_print(f"❌ {kind}: failed {', '.join(membership.failures())}")

        reports["passed"] = passed
        path = write_json({"run_key": run_key, "reports": reports}, report_path(cfg.output_dir, run_key, "validate"))
        ts_print(f"{'✅ All certificates pass' if passed else '❌ Certificate failure'}; report: {path}")
        return EXIT_OK if passed else EXIT_FAILED

    return guarded(body)
