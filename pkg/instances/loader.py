"""Custom distributions from JSON: {"support", "probs", "w_star", "gamma"}."""

import json
from pathlib import Path
from typing import Any, Dict, Union

from utils.errors import ConfigError

from . import DiscreteDistribution

REQUIRED_FIELDS = ("support", "probs", "w_star", "gamma")


def distribution_from_dict(data: Dict[str, Any], field_prefix: str = "distribution") -> DiscreteDistribution:
    if not isinstance(data, dict):
        raise ConfigError(field_prefix, "must be a mapping")
    for key in REQUIRED_FIELDS:
        if key not in data:
            raise ConfigError(f"{field_prefix}.{key}", "missing")
    try:
        return DiscreteDistribution(support=data["support"], probs=data["probs"], w_star=data["w_star"],
                                    gamma=float(data["gamma"]), name=str(data.get("name", "custom")))
    except (TypeError, ValueError) as e:
        raise ConfigError(field_prefix, str(e)) from e


def load_distribution(path: Union[str, Path]) -> DiscreteDistribution:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Distribution file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError("distribution.path", f"{path} is not valid JSON: {e}") from e
    return distribution_from_dict(data)
