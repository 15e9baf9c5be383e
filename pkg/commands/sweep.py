"""
sweep: R trials per (γ, T, n) grid cell, cells in parallel.

Writes trials.csv, cells.csv, sweep.json, verify.json and plotdata_<axis>.csv
under <output_dir>/<run_key>/. Exit 1 if verification fails or the run was
interrupted (completed cells are still written, with "truncated": true).
"""

from typing import Any, Dict, List

from experiments.results_io import write_cells_csv, write_json, write_plotdata, write_trials_csv
from experiments.slopes import axis_cells
from experiments.sweep import SweepResult, run_sweep
from experiments.verify import verify_bounds
from utils.cache_paths import cells_csv_path, plotdata_path, report_path, summary_json_path, trials_csv_path
from utils.logging_utils import ts_print
from utils.parallel_runner import default_concurrency

from . import EXIT_FAILED, EXIT_OK
from .common import add_common_arguments, guarded, load_config, run_key_for, sweep_config


def add_arguments(parser):
    add_common_arguments(parser)
    parser.add_argument('--max-concurrent', type=int, default=None,
                        help='Parallel cells (default: SEPGD_THREADS or CPU count)')
    parser.add_argument('--no-grid', action='store_true',
                        help='Disable the live progress grid')


def plot_points(sweep: SweepResult, axis: str) -> List[Dict[str, Any]]:
    return [{"x": getattr(c, axis), "mean_risk": c.mean_risk, "stderr": c.stderr,
             "upper_bound": c.upper_bound,
             "lower_bound": c.instance_lower_bound if c.instance_lower_bound is not None else c.lower_bound}
            for c in axis_cells(sweep, axis)]


def write_sweep_files(sweep: SweepResult, output_dir: str, run_key: str) -> Dict[str, str]:
    paths = {
        "trials": write_trials_csv(sweep.trial_rows, trials_csv_path(output_dir, run_key)),
        "cells": write_cells_csv(sweep.cells, cells_csv_path(output_dir, run_key)),
        "sweep": write_json({"run_key": run_key, **sweep.to_dict()}, summary_json_path(output_dir, run_key)),
    }
    for axis in ("T", "n"):
        try:
            points = plot_points(sweep, axis)
        except ValueError:
            continue
        if len(points) > 1:
            paths[f"plotdata_{axis}"] = write_plotdata(points, plotdata_path(output_dir, run_key, axis))
    return {k: str(v) for k, v in paths.items()}


def run(args) -> int:
    def body() -> int:
        cfg = load_config(args)
        grid = sweep_config(cfg)
        run_key = run_key_for("sweep", cfg)
        max_concurrent = args.max_concurrent or default_concurrency()
        ts_print(f"🚀 sweep {run_key}: {len(grid.cells())} cells x {grid.trials} trials, "
                 f"max_concurrent={max_concurrent}")
        sweep = run_sweep(grid, output_dir=cfg.output_dir, run_key=run_key,
                          show_progress=not args.no_grid, max_concurrent=max_concurrent)
        paths = write_sweep_files(sweep, cfg.output_dir, run_key)
        report = verify_bounds(sweep)
        write_json({"run_key": run_key, **report.to_dict()}, report_path(cfg.output_dir, run_key, "verify"))

        for axis, fit in sorted(sweep.slopes.items()):
            if "slope" in fit:
                ts_print(f"📈 slope vs {axis}: {fit['slope']:.4f} [{fit['ci_low']:.4f}, {fit['ci_high']:.4f}]")
            else:
                ts_print(f"⚠️ slope vs {axis}: {fit['error']}")
        for name, path in paths.items():
            ts_print(f"📁 {name}: {path}")
        if sweep.truncated:
            ts_print(f"⚠️ Sweep interrupted: {len(sweep.cells)} cells written with truncated=true")
            return EXIT_FAILED
        if not report.passed:
            for f in report.failures:
                ts_print(f"❌ cell {f['cell']} (g={f['gamma']:g}, T={f['T']}, n={f['n']}): {f['check']} {f['detail']}")
            return EXIT_FAILED
        ts_print(f"✅ {report.cells_checked} cells verified")
        return EXIT_OK

    return guarded(body)
