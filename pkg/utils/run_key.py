import json
from hashlib import sha1
from typing import Any, Dict

import numpy as np


def build_run_key(kind: str, config: Dict[str, Any]) -> str:
    """Deterministic namespace key for a run configuration.

    Format: <kind>__<distribution>__<tail>__<loss>__<algo>__<sha8 of the canonical config>
    """
    tail = config.get("tail", {}) or {}
    tail_tag = tail.get("family", "custom")
    if tail.get("alpha") is not None:
        tail_tag = f"{tail_tag}-a{tail['alpha']}"
    dist = (config.get("distribution", {}) or {}).get("kind", "custom")
    parts = [kind, dist, tail_tag, str(config.get("loss", "loss")), str(config.get("algo", "gd"))]
    return "__".join(parts) + "__" + short_run_key(canonical_json(config))


def short_run_key(run_key: str) -> str:
    return sha1(run_key.encode("utf-8")).hexdigest()[:8]


def canonical_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)


def derive_seed(global_seed: int, cell_index: int, trial_index: int) -> int:
    """Trial seed keyed by (global_seed, cell, trial); independent of scheduling."""
    ss = np.random.SeedSequence([int(global_seed), int(cell_index), int(trial_index)])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator for one (seed, stream) pair.

    Stream 0 draws training samples, stream 1 SGD indices, stream 2 Monte Carlo
    validation draws, stream 3 bootstrap resamples.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))
