"""CSV and JSON result files; fixed column order and float format for byte-identical reruns."""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from utils.constants import SCHEMA_VERSION

FLOAT_FORMAT = "%.17g"

TRIAL_COLUMNS = [
    "schema_version", "cell", "trial", "seed", "distribution", "tail", "loss", "algo",
    "gamma", "eta", "T", "n", "delta", "K",
    "w_norm", "emp_risk", "pop_risk",
    "upper_bound", "lower_bound", "instance_lower_bound", "norm_bound", "opt_error_bound",
    "sgd_empirical_bound",
    "v_descent", "v_norm", "v_opt_error", "v_upper_risk",
    "v_norm_sgd", "v_regret_sgd", "v_regret_sgd_stated", "v_sgd_empirical",
]

CELL_COLUMNS = [
    "schema_version", "cell", "gamma", "T", "n", "trials", "eta", "eps",
    "mean_risk", "stderr", "mean_emp_risk", "mean_norm",
    "upper_bound", "lower_bound", "instance_lower_bound",
    "deterministic_violations", "sgd_violation_fraction", "sgd_ci_low", "sgd_ci_high", "error",
]

PLOT_COLUMNS = ["x", "mean_risk", "stderr", "upper_bound", "lower_bound", "schema_version"]

_VIOLATION_NAMES = ("descent", "norm", "opt_error", "upper_risk", "norm_sgd", "regret_sgd",
                    "regret_sgd_stated", "sgd_empirical")


def _bound_value(bounds, name) -> Optional[float]:
    rep = bounds.get(name)
    return rep.value if rep is not None and rep.feasible else None


def trial_row(cell_index: int, trial_index: int, result) -> Dict[str, Any]:
    cfg = result.config
    tail = cfg["tail"]
    row = {
        "schema_version": SCHEMA_VERSION, "cell": cell_index, "trial": trial_index, "seed": result.seed,
        "distribution": cfg["distribution"],
        "tail": tail["family"] + (f"-a{tail['alpha']:g}" if tail.get("alpha") is not None else ""),
        "loss": cfg["loss"], "algo": cfg["algo"],
        "gamma": cfg["gamma"], "eta": cfg["eta"], "T": cfg["T"], "n": cfg["n"], "delta": cfg["delta"], "K": cfg["K"],
        "w_norm": result.measured["w_norm"], "emp_risk": result.measured["emp_risk"],
        "pop_risk": result.measured["pop_risk"],
        "upper_bound": _bound_value(result.bounds, "upper_risk"),
        "lower_bound": _bound_value(result.bounds, "lower_risk"),
        "instance_lower_bound": _bound_value(result.bounds, "instance_lower"),
        "norm_bound": _bound_value(result.bounds, "norm"),
        "opt_error_bound": _bound_value(result.bounds, "opt_error"),
        "sgd_empirical_bound": _bound_value(result.bounds, "sgd_empirical"),
    }
    for name in _VIOLATION_NAMES:
        v = result.violations.get(name)
        row[f"v_{name}"] = None if v is None else int(v.violated)
    return row


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return None if np.isnan(obj) else ("inf" if obj > 0 else "-inf")
    return obj


def write_json(data: Dict[str, Any], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = dict(to_jsonable(data))
    payload.setdefault("schema_version", SCHEMA_VERSION)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, ensure_ascii=False, sort_keys=True)
        f.write("\n")
    return path


def read_json(path: Path) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _write_csv(rows: Iterable[Dict[str, Any]], columns: Sequence[str], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(list(rows), columns=list(columns))
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_trials_csv(rows: List[Dict[str, Any]], path: Path) -> Path:
    return _write_csv(rows, TRIAL_COLUMNS, path)


def write_cells_csv(cells, path: Path) -> Path:
    rows = []
    for c in cells:
        row = {k: v for k, v in c.summary().items() if k in CELL_COLUMNS}
        row["schema_version"] = SCHEMA_VERSION
        rows.append(row)
    return _write_csv(rows, CELL_COLUMNS, path)


def write_plotdata(points: List[Dict[str, Any]], path: Path) -> Path:
    rows = [dict(p, schema_version=SCHEMA_VERSION) for p in points]
    return _write_csv(rows, PLOT_COLUMNS, path)


def read_csv(path: Path) -> pd.DataFrame:
    return pd.read_csv(path)
