from pathlib import Path
from typing import Union

PathLike = Union[str, Path]


def run_dir(output_dir: PathLike, run_key: str) -> Path:
    return Path(output_dir) / run_key


def cell_task_id(index: int) -> str:
    return f"cell_{index:04d}"


def trial_json_path(output_dir: PathLike, run_key: str) -> Path:
    return run_dir(output_dir, run_key) / "trial.json"


def trials_csv_path(output_dir: PathLike, run_key: str) -> Path:
    return run_dir(output_dir, run_key) / "trials.csv"


def cells_csv_path(output_dir: PathLike, run_key: str) -> Path:
    return run_dir(output_dir, run_key) / "cells.csv"


def summary_json_path(output_dir: PathLike, run_key: str) -> Path:
    return run_dir(output_dir, run_key) / "sweep.json"


def plotdata_path(output_dir: PathLike, run_key: str, axis: str) -> Path:
    return run_dir(output_dir, run_key) / f"plotdata_{axis}.csv"


def report_path(output_dir: PathLike, run_key: str, name: str) -> Path:
    return run_dir(output_dir, run_key) / f"{name}.json"
