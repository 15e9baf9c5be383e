"""Sweeps: R trials per (γ, T, n) cell, cells run in parallel, results in grid order."""

import asyncio
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from utils.cache_paths import cell_task_id
from utils.constants import CONFIDENCE
from utils.logging_utils import ts_print
from utils.parallel_runner import ParallelRunner
from utils.run_key import derive_seed

from .configs import SweepCell, SweepConfig
from .results_io import to_jsonable, trial_row
from .slopes import fit_slope
from .trial import DETERMINISTIC, compute_cell_bounds, run_trials_batch


@dataclass
class CellResult:
    """Per-cell trial statistics; `risks` holds the exact per-trial population risks."""

    index: int
    gamma: float
    T: int
    n: int
    trials: int
    mean_risk: float
    stderr: float
    risks: Optional[np.ndarray] = None
    mean_emp_risk: Optional[float] = None
    mean_norm: Optional[float] = None
    eta: Optional[float] = None
    eps: Optional[float] = None
    delta: Optional[float] = None
    upper_bound: Optional[float] = None
    lower_bound: Optional[float] = None
    instance_lower_bound: Optional[float] = None
    violation_counts: Dict[str, int] = field(default_factory=dict)
    max_slack: Dict[str, float] = field(default_factory=dict)
    violation_kinds: Dict[str, str] = field(default_factory=dict)
    sgd_violation_fraction: Optional[float] = None
    sgd_ci: Optional[Tuple[float, float]] = None
    proof_conditions_met: Optional[bool] = None
    error: Optional[str] = None

    @classmethod
    def from_risks(cls, index: int, gamma: float, T: int, n: int, risks, **kwargs) -> "CellResult":
        risks = np.asarray(risks, dtype=float)
        stderr = float(np.std(risks, ddof=1) / math.sqrt(risks.size)) if risks.size > 1 else 0.0
        return cls(index=index, gamma=gamma, T=T, n=n, trials=int(risks.size), mean_risk=float(np.mean(risks)),
                   stderr=stderr, risks=risks, **kwargs)

    @property
    def deterministic_violations(self) -> int:
        return sum(c for name, c in self.violation_counts.items() if self.violation_kinds.get(name) == DETERMINISTIC)

    def summary(self) -> Dict[str, Any]:
        return {
            "cell": self.index, "gamma": self.gamma, "T": self.T, "n": self.n, "trials": self.trials,
            "eta": self.eta, "eps": self.eps, "delta": self.delta,
            "mean_risk": self.mean_risk, "stderr": self.stderr,
            "mean_emp_risk": self.mean_emp_risk, "mean_norm": self.mean_norm,
            "upper_bound": self.upper_bound, "lower_bound": self.lower_bound,
            "instance_lower_bound": self.instance_lower_bound,
            "violation_counts": dict(self.violation_counts), "max_slack": dict(self.max_slack),
            "violation_kinds": dict(self.violation_kinds),
            "deterministic_violations": self.deterministic_violations,
            "sgd_violation_fraction": self.sgd_violation_fraction,
            "sgd_ci_low": None if self.sgd_ci is None else self.sgd_ci[0],
            "sgd_ci_high": None if self.sgd_ci is None else self.sgd_ci[1],
            "proof_conditions_met": self.proof_conditions_met, "error": self.error,
        }

    @classmethod
    def from_summary(cls, data: Dict[str, Any]) -> "CellResult":
        ci = None
        if data.get("sgd_ci_low") is not None:
            ci = (data["sgd_ci_low"], data["sgd_ci_high"])
        return cls(index=data["cell"], gamma=data["gamma"], T=data["T"], n=data["n"], trials=data["trials"],
                   mean_risk=data["mean_risk"], stderr=data["stderr"], mean_emp_risk=data.get("mean_emp_risk"),
                   mean_norm=data.get("mean_norm"), eta=data.get("eta"), eps=data.get("eps"),
                   delta=data.get("delta"), upper_bound=data.get("upper_bound"),
                   lower_bound=data.get("lower_bound"), instance_lower_bound=data.get("instance_lower_bound"),
                   violation_counts=dict(data.get("violation_counts") or {}),
                   max_slack=dict(data.get("max_slack") or {}),
                   violation_kinds=dict(data.get("violation_kinds") or {}),
                   sgd_violation_fraction=data.get("sgd_violation_fraction"), sgd_ci=ci,
                   proof_conditions_met=data.get("proof_conditions_met"), error=data.get("error"))


@dataclass
class SweepResult:
    config: Dict[str, Any]
    cells: List[CellResult]
    seed: int = 0
    axis: Optional[str] = None
    trial_rows: List[Dict[str, Any]] = field(default_factory=list)
    slopes: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    truncated: bool = False
    errors: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def axes(self) -> Dict[str, List]:
        return {"gamma": sorted({c.gamma for c in self.cells}), "T": sorted({c.T for c in self.cells}),
                "n": sorted({c.n for c in self.cells})}

    def to_dict(self) -> Dict[str, Any]:
        return {"config": self.config, "seed": self.seed, "axis": self.axis, "axes": self.axes,
                "cells": [c.summary() for c in self.cells], "slopes": self.slopes,
                "truncated": self.truncated, "errors": self.errors}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepResult":
        return cls(config=data.get("config", {}), cells=[CellResult.from_summary(c) for c in data["cells"]],
                   seed=data.get("seed", 0), axis=data.get("axis"), slopes=data.get("slopes") or {},
                   truncated=bool(data.get("truncated")), errors=list(data.get("errors") or []))


def summarize_cell(cell: SweepCell, cell_bounds, results) -> CellResult:
    risks = np.array([r.measured["pop_risk"] for r in results])
    reports = cell_bounds.reports
    counts: Dict[str, int] = {}
    slack: Dict[str, float] = {}
    kinds: Dict[str, str] = {}
    for res in results:
        for name, v in res.violations.items():
            counts[name] = counts.get(name, 0) + int(v.violated)
            slack[name] = max(slack.get(name, -math.inf), v.slack)
            kinds[name] = v.kind

    def value(name):
        rep = reports.get(name)
        return rep.value if rep is not None and rep.feasible else None

    sgd_fraction = sgd_ci = None
    if "sgd_empirical" in counts:
        k, R = counts["sgd_empirical"], len(results)
        sgd_fraction = k / R
        lo, hi = proportion_confint(k, R, alpha=1 - CONFIDENCE, method="wilson")
        sgd_ci = (float(lo), float(hi))
    inst = reports.get("instance_lower")
    proof_ok = None if inst is None else inst.diagnostics.get("proof_conditions_met")
    return CellResult.from_risks(
        cell.index, cell.gamma, cell.T, cell.n, risks,
        mean_emp_risk=float(np.mean([r.measured["emp_risk"] for r in results])),
        mean_norm=float(np.mean([r.measured["w_norm"] for r in results])),
        eta=cell_bounds.eta, eps=cell_bounds.eps, delta=results[0].config["delta"],
        upper_bound=value("upper_risk"), lower_bound=value("lower_risk"), instance_lower_bound=value("instance_lower"),
        violation_counts=counts, max_slack=slack, violation_kinds=kinds,
        sgd_violation_fraction=sgd_fraction, sgd_ci=sgd_ci, proof_conditions_met=proof_ok)


def run_cell(grid: SweepConfig, cell: SweepCell) -> Tuple[CellResult, List[Dict[str, Any]]]:
    cfg = grid.cell_config(cell)
    seeds = [derive_seed(grid.seed, cell.index, r) for r in range(grid.trials)]
    cell_bounds = compute_cell_bounds(cfg)
    results = run_trials_batch(cfg, seeds, cell_bounds)
    rows = [trial_row(cell.index, r, res) for r, res in enumerate(results)]
    return summarize_cell(cell, cell_bounds, results), rows


def _row_label(cell: SweepCell) -> str:
    return f"g={cell.gamma:g} T={cell.T}"


def run_sweep(grid: SweepConfig, output_dir: Optional[str] = None, run_key: Optional[str] = None,
              show_progress: bool = True, max_concurrent: Optional[int] = None) -> SweepResult:
    """Parallel over cells; the result depends only on (grid, seed).

    With output_dir, each finished cell is saved under progress/<run_key>/.
    On KeyboardInterrupt the completed cells are returned with truncated=True.
    """
    cells = grid.cells()
    by_label = {(_row_label(c), str(c.n)): c for c in cells}
    rows = list(dict.fromkeys(_row_label(c) for c in cells))
    cols = list(dict.fromkeys(str(c.n) for c in cells))
    runner = ParallelRunner(max_concurrent=max_concurrent, show_grid=show_progress)
    done: Dict[int, Tuple[CellResult, List[Dict[str, Any]]]] = {}
    failed: Dict[int, Dict[str, Any]] = {}

    def task(row: str, col: str, tracker, **_) -> Dict[str, Any]:
        cell = by_label[(row, col)]
        try:
            result, trial_rows = run_cell(grid, cell)
        except Exception as e:
            failed[cell.index] = {"cell": cell.index, "label": cell.label, "error": str(e)}
            raise
        done[cell.index] = (result, trial_rows)
        tracker.add_note(row, col, f"{result.trials} trials, mean risk {result.mean_risk:.4g}")
        if output_dir is not None and run_key is not None:
            runner.save_incremental_progress(run_key, cell_task_id(cell.index),
                                             to_jsonable(result.summary()), output_dir)
        return {"success": True, "cell": cell.index}

    truncated = False
    try:
        asyncio.run(runner.run_parallel_tasks(rows, cols, task, f"sweep {run_key or ''}".strip()))
    except KeyboardInterrupt:
        truncated = True
        ts_print(f"Interrupted: keeping {len(done)} of {len(cells)} finished cells")
    finally:
        runner.shutdown()

    cell_results: List[CellResult] = []
    trial_rows: List[Dict[str, Any]] = []
    for cell in cells:
        if cell.index in done:
            res, trs = done[cell.index]
            cell_results.append(res)
            trial_rows.extend(trs)
        elif cell.index in failed:
            cell_results.append(CellResult(index=cell.index, gamma=cell.gamma, T=cell.T, n=cell.n, trials=0,
                                           mean_risk=math.nan, stderr=math.nan, error=failed[cell.index]["error"]))
    sweep = SweepResult(config=grid.to_dict(), cells=cell_results, seed=grid.seed, axis=grid.axis,
                        trial_rows=trial_rows, truncated=truncated,
                        errors=[failed[i] for i in sorted(failed)])
    if grid.axis is not None and not truncated:
        try:
            slope, ci = fit_slope(sweep, grid.axis)
            sweep.slopes[grid.axis] = {"slope": slope, "ci_low": ci[0], "ci_high": ci[1]}
        except ValueError as e:
            sweep.slopes[grid.axis] = {"error": str(e)}
    return sweep
