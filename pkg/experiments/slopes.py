"""Log-log slope of mean risk along one sweep axis, with a bootstrap interval."""

from typing import List, Tuple

import numpy as np

from utils.constants import BOOTSTRAP_SAMPLES, CONFIDENCE, MIN_SLOPE_POINTS
from utils.run_key import make_rng


def axis_cells(sweep, axis: str) -> List:
    """Cells along `axis` with the other axes pinned.

    T-axis: n at its largest grid value. n-axis: T at its largest grid value,
    where the n-term of the rate dominates. γ is pinned to its smallest value.
    """
    if axis not in ("T", "n"):
        raise ValueError(f"axis must be 'T' or 'n', got {axis!r}")
    cells = [c for c in sweep.cells if c.error is None and c.trials > 0]
    if not cells:
        raise ValueError("sweep has no completed cells")
    gamma = min(c.gamma for c in cells)
    cells = [c for c in cells if c.gamma == gamma]
    if axis == "T":
        pin = max(c.n for c in cells)
        chosen = [c for c in cells if c.n == pin]
    else:
        pin = max(c.T for c in cells)
        chosen = [c for c in cells if c.T == pin]
    return sorted(chosen, key=lambda c: getattr(c, axis))


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def fit_slope(sweep, axis: str, samples: int = BOOTSTRAP_SAMPLES,
              confidence: float = CONFIDENCE) -> Tuple[float, Tuple[float, float]]:
    """Least-squares slope of log(mean risk) against log(axis) and a percentile bootstrap CI.

    The bootstrap resamples each cell's trials; cells loaded without per-trial
    risks are resampled from a normal with their standard error.
    """
    cells = axis_cells(sweep, axis)
    if len(cells) < MIN_SLOPE_POINTS:
        raise ValueError(f"need at least {MIN_SLOPE_POINTS} grid points on axis {axis}, got {len(cells)}")
    x = np.array([float(getattr(c, axis)) for c in cells])
    y = np.array([c.mean_risk for c in cells])
    if np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise ValueError("mean risks must be positive to fit a log-log slope")
    slope = _slope(x, y)

    rng = make_rng(sweep.seed, stream=3)
    boot = np.empty((samples, len(cells)))
    for j, c in enumerate(cells):
        if c.risks is not None and len(c.risks) > 0:
            risks = np.asarray(c.risks, dtype=float)
            idx = rng.integers(0, risks.size, size=(samples, risks.size))
            boot[:, j] = risks[idx].mean(axis=1)
        else:
            boot[:, j] = c.mean_risk + c.stderr * rng.standard_normal(samples)
    ok = np.all(boot > 0, axis=1)
    lx = np.log(x)
    fits = np.polyfit(lx, np.log(boot[ok]).T, 1)[0] if np.any(ok) else np.array([slope])
    tail = (1.0 - confidence) / 2.0
    lo, hi = np.quantile(fits, [tail, 1.0 - tail])
    return slope, (float(lo), float(hi))
