"""Run configuration: YAML/JSON file → ${ENV} substitution → --set overrides → RunConfig.

Every problem raises ConfigError naming the dotted field path.
"""

import copy
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import yaml

from .constants import DEFAULT_K, DEFAULT_TRIALS
from .errors import ConfigError

DIST_KINDS = ("big_t", "small_t", "custom")
LOSS_KINDS = ("quadratic_extension", "linear_extension", "logistic", "squared_hinge", "hinge")
TAIL_FAMILIES = ("exponential", "polynomial", "stretched_exponential")


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Missing config: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError("", f"{path} is not valid YAML/JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("", f"{path} must contain a mapping at the top level")
    return data


def substitute_env(data: Any, path: str = "") -> Any:
    """Replace every string value of the form ${VARNAME} with the environment value."""
    if isinstance(data, dict):
        return {k: substitute_env(v, f"{path}.{k}" if path else str(k)) for k, v in data.items()}
    if isinstance(data, list):
        return [substitute_env(v, f"{path}[{i}]") for i, v in enumerate(data)]
    if isinstance(data, str) and data.startswith("${") and data.endswith("}"):
        env_var = data[2:-1]
        value = os.getenv(env_var)
        if value is None:
            raise ConfigError(path, f"environment variable {env_var} is not set")
        return yaml.safe_load(value)
    return data


def apply_overrides(data: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    """Apply `a.b.c=value` overrides; values are parsed as YAML scalars or lists."""
    out = copy.deepcopy(data)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(item, "override must look like key.path=value")
        key, raw = item.split("=", 1)
        parts = [p for p in key.strip().split(".") if p]
        if not parts:
            raise ConfigError(key, "empty override key")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(key, f"cannot parse override value {raw!r}: {e}") from e
        node = out
        for i, part in enumerate(parts[:-1]):
            nxt = node.get(part)
            if nxt is None:
                nxt = node[part] = {}
            if not isinstance(nxt, dict):
                raise ConfigError(".".join(parts[:i + 1]), "is not a mapping")
            node = nxt
        node[parts[-1]] = value
    return out


@dataclass(frozen=True)
class SweepSpec:
    T: Tuple[int, ...]
    n: Tuple[int, ...]
    gamma: Tuple[float, ...] = ()
    axis: Optional[str] = None
    min_trials: int = 1


@dataclass(frozen=True)
class EventsSpec:
    n: int = 50
    samples: int = 1_000_000


@dataclass(frozen=True)
class RunConfig:
    tail: Dict[str, Any]
    loss: str
    distribution: Dict[str, Any]
    gamma: float
    T: int
    n: int
    eta: Union[float, str] = "auto"
    delta: float = 0.1
    K: float = DEFAULT_K
    eps: Optional[float] = None
    algo: str = "gd"
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    output_dir: str = "results"
    sweep: Optional[SweepSpec] = None
    events: Optional[EventsSpec] = None
    custom_loss: Optional[str] = None
    raw: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)


def _require(data: Dict[str, Any], key: str, prefix: str = "") -> Any:
    if key not in data or data[key] is None:
        raise ConfigError(f"{prefix}{key}", "missing required field")
    return data[key]


def _number(value: Any, path: str, positive: bool = True) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"must be a number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(path, f"must be positive, got {value!r}")
    return float(value)


def _integer(value: Any, path: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise ConfigError(path, f"must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(path, f"must be >= {minimum}, got {value!r}")
    return int(value)


def _int_list(value: Any, path: str) -> Tuple[int, ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError(path, "must be a nonempty list")
    return tuple(_integer(v, f"{path}[{i}]") for i, v in enumerate(value))


def build_run_config(data: Dict[str, Any]) -> RunConfig:
    tail = _require(data, "tail")
    if not isinstance(tail, dict):
        raise ConfigError("tail", "must be a mapping with 'family'")
    family = _require(tail, "family", "tail.")
    if family not in TAIL_FAMILIES:
        raise ConfigError("tail.family", f"unknown family {family!r}; valid: {list(TAIL_FAMILIES)}")
    if family != "exponential":
        _number(_require(tail, "alpha", "tail."), "tail.alpha")

    loss = _require(data, "loss")
    if loss not in LOSS_KINDS:
        raise ConfigError("loss", f"unknown loss {loss!r}; valid: {list(LOSS_KINDS)}")
    custom_loss = data.get("custom_loss")
    if custom_loss is not None and custom_loss not in LOSS_KINDS:
        raise ConfigError("custom_loss", f"unknown loss {custom_loss!r}; valid: {list(LOSS_KINDS)}")

    dist = _require(data, "distribution")
    if isinstance(dist, str):
        dist = {"kind": dist}
    if not isinstance(dist, dict):
        raise ConfigError("distribution", "must be a kind name or a mapping with 'kind'")
    kind = _require(dist, "kind", "distribution.")
    if kind not in DIST_KINDS:
        raise ConfigError("distribution.kind", f"unknown kind {kind!r}; valid: {list(DIST_KINDS)}")
    if kind == "custom":
        _require(dist, "path", "distribution.")

    gamma = _number(_require(data, "gamma"), "gamma")
    T = _integer(_require(data, "T"), "T")
    n = _integer(_require(data, "n"), "n")
    eta = data.get("eta", "auto")
    if eta != "auto":
        eta = _number(eta, "eta")
    delta = _number(data.get("delta", 0.1), "delta")
    if not delta < 1:
        raise ConfigError("delta", f"must lie in (0, 1), got {delta!r}")
    K = _number(data.get("K", DEFAULT_K), "K")
    eps = data.get("eps")
    if eps is not None:
        eps = _number(eps, "eps")
    algo = data.get("algo", "gd")
    if algo not in ("gd", "sgd"):
        raise ConfigError("algo", f"must be 'gd' or 'sgd', got {algo!r}")
    trials = _integer(data.get("trials", DEFAULT_TRIALS), "trials")
    seed = _integer(data.get("seed", 0), "seed", minimum=0)
    output_dir = str(data.get("output_dir", "results"))

    sweep = None
    if data.get("sweep") is not None:
        s = data["sweep"]
        if not isinstance(s, dict):
            raise ConfigError("sweep", "must be a mapping")
        gammas = s.get("gamma") or [gamma]
        if not isinstance(gammas, list):
            raise ConfigError("sweep.gamma", "must be a list")
        axis = s.get("axis")
        if axis not in (None, "T", "n"):
            raise ConfigError("sweep.axis", f"must be 'T' or 'n', got {axis!r}")
        min_trials = _integer(s.get("min_trials", 1), "sweep.min_trials")
        if trials < min_trials:
            raise ConfigError("trials", f"{trials} is below sweep.min_trials = {min_trials}")
        sweep = SweepSpec(T=_int_list(s.get("T", [T]), "sweep.T"), n=_int_list(s.get("n", [n]), "sweep.n"),
                          gamma=tuple(_number(g, f"sweep.gamma[{i}]") for i, g in enumerate(gammas)),
                          axis=axis, min_trials=min_trials)

    events = None
    if data.get("events") is not None:
        e = data["events"]
        if not isinstance(e, dict):
            raise ConfigError("events", "must be a mapping")
        events = EventsSpec(n=_integer(e.get("n", 50), "events.n"),
                            samples=_integer(e.get("samples", 1_000_000), "events.samples"))

    return RunConfig(tail=dict(tail), loss=loss, distribution=dict(dist), gamma=gamma, T=T, n=n, eta=eta,
                     delta=delta, K=K, eps=eps, algo=algo, trials=trials, seed=seed, output_dir=output_dir,
                     sweep=sweep, events=events, custom_loss=custom_loss, raw=copy.deepcopy(data))


def load_run_config(path: Union[str, Path], overrides: Sequence[str] = (),
                    output_dir: Optional[str] = None) -> RunConfig:
    data = substitute_env(load_config_file(path))
    data = apply_overrides(data, list(overrides))
    if output_dir is not None:
        data["output_dir"] = output_dir
    return build_run_config(data)


def config_echo(cfg: RunConfig) -> Dict[str, Any]:
    """Canonical dict used for run keys (no output_dir)."""
    out: Dict[str, Any] = {k: v for k, v in cfg.raw.items() if k != "output_dir"}
    for key in ("tail", "loss", "distribution", "algo"):
        out[key] = getattr(cfg, key)
    return out
