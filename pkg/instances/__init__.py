"""
Separable data

Finite-support distributions over signed examples z = y·x with a margin
certificate (w*, γ), and datasets sampled from them:
- hard-instance constructions (hard.py)
- reproducible sampling (sampling.py)
- exact population / empirical risk (risk.py)
- JSON loader for custom distributions (loader.py)
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from utils.constants import MARGIN_ATOL, NORM_ATOL, PROB_SUM_ATOL


def _frozen(a, dtype=float) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Distribution on finitely many points z_j with w*·z_j ≥ γ for every j."""

    support: np.ndarray
    probs: np.ndarray
    w_star: np.ndarray
    gamma: float
    name: str = "custom"
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        support = _frozen(self.support)
        if support.ndim != 2 or support.shape[0] == 0:
            raise ValueError(f"support must be a nonempty (k, d) array, got shape {support.shape}")
        probs = _frozen(self.probs)
        w_star = _frozen(self.w_star)
        k, d = support.shape
        if probs.shape != (k,):
            raise ValueError(f"probs must have {k} entries, got {probs.shape}")
        if w_star.shape != (d,):
            raise ValueError(f"w_star must have dimension {d}, got {w_star.shape}")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite and nonnegative")
        if abs(float(probs.sum()) - 1.0) > PROB_SUM_ATOL:
            raise ValueError(f"probabilities sum to {float(probs.sum())!r}, not 1")
        norms = np.linalg.norm(support, axis=1)
        if np.any(norms > 1.0 + NORM_ATOL):
            j = int(np.argmax(norms))
            raise ValueError(f"support point {j} has norm {norms[j]:.6g} > 1")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        margins = support @ w_star
        if np.any(margins < self.gamma - MARGIN_ATOL):
            j = int(np.argmin(margins))
            raise ValueError(f"w_star . z_{j} = {margins[j]:.6g} is below gamma = {self.gamma:.6g}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "w_star", w_star)
        object.__setattr__(self, "gamma", float(self.gamma))

    @property
    def dim(self) -> int:
        return int(self.support.shape[1])

    @property
    def size(self) -> int:
        return int(self.support.shape[0])

    def margins(self) -> np.ndarray:
        return self.support @ self.w_star

    @property
    def unit_witness(self) -> np.ndarray:
        return self.w_star / np.linalg.norm(self.w_star)

    @property
    def normalized_margin(self) -> float:
        """min_j (w*/‖w*‖)·z_j."""
        return float(np.min(self.support @ self.unit_witness))

    @property
    def effective_gamma(self) -> float:
        """Margin of the unit witness usable in the bounds: min(γ, normalized margin)."""
        return min(self.gamma, self.normalized_margin)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "support": self.support.tolist(), "probs": self.probs.tolist(),
                "w_star": self.w_star.tolist(), "gamma": self.gamma, "params": dict(self.params)}


@dataclass(frozen=True, eq=False)
class Dataset:
    """n draws from a distribution, stored as support indices plus counts."""

    dist: DiscreteDistribution
    indices: np.ndarray
    counts: np.ndarray
    seed: Optional[int] = None

    def __post_init__(self):
        if np.any(self.indices < 0) or np.any(self.indices >= self.dist.size):
            raise ValueError("dataset indices fall outside the support")
        if int(self.counts.sum()) != self.indices.size:
            raise ValueError("counts do not sum to n")

    @classmethod
    def from_indices(cls, dist: DiscreteDistribution, indices, seed: Optional[int] = None) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64).ravel()
        if idx.size and (idx.min() < 0 or idx.max() >= dist.size):
            raise ValueError("dataset indices fall outside the support")
        idx = _frozen(idx, dtype=np.min_scalar_type(max(dist.size - 1, 0)))
        counts = _frozen(np.bincount(idx, minlength=dist.size), dtype=np.int64)
        return cls(dist=dist, indices=idx, counts=counts, seed=seed)

    @property
    def n(self) -> int:
        return int(self.indices.size)

    @property
    def examples(self) -> np.ndarray:
        return self.dist.support[self.indices.astype(np.intp)]

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / max(self.n, 1)
