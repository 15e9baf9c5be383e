"""Trial and sweep configurations built from a RunConfig or directly."""

import itertools
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence

from instances import DiscreteDistribution
from instances.hard import make_bigT_instance, make_smallT_instance
from losses import LossFunction
from tails import TailFunction
from utils.constants import DEFAULT_K, DEFAULT_TRIALS, SMALL_T_EPS_CAP

DIST_KINDS = ("big_t", "small_t", "custom")
ALGOS = ("gd", "sgd")


@dataclass(frozen=True)
class TrialConfig:
    phi: TailFunction
    loss: LossFunction
    dist_kind: str
    gamma: float
    T: int
    n: int
    eta: Optional[float] = None
    delta: float = 0.1
    K: float = DEFAULT_K
    eps: Optional[float] = None
    algo: str = "gd"
    custom_dist: Optional[DiscreteDistribution] = None
    record_every: Optional[int] = None

    def __post_init__(self):
        if self.dist_kind not in DIST_KINDS:
            raise ValueError(f"distribution kind must be one of {DIST_KINDS}, got {self.dist_kind!r}")
        if self.dist_kind == "custom" and self.custom_dist is None:
            raise ValueError("custom distribution kind needs a loaded distribution")
        if self.algo not in ALGOS:
            raise ValueError(f"algo must be one of {ALGOS}, got {self.algo!r}")
        if int(self.T) != self.T or self.T < 1:
            raise ValueError(f"T must be a positive integer, got {self.T!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (0 < self.delta < 1):
            raise ValueError(f"delta must lie in (0, 1), got {self.delta!r}")

    @property
    def step_size(self) -> float:
        """η, with None meaning the largest admissible value 1/(2β)."""
        return self.loss.max_step() if self.eta is None else float(self.eta)

    @property
    def small_t_eps(self) -> float:
        return SMALL_T_EPS_CAP if self.eps is None else float(self.eps)

    @property
    def big_t_eps(self) -> Optional[float]:
        """Pinned ε of the big-T lower bound; None solves for it at T."""
        return None if self.eps is None else float(self.eps)

    def distribution(self) -> DiscreteDistribution:
        if self.dist_kind == "big_t":
            return make_bigT_instance(self.gamma, self.n)
        if self.dist_kind == "small_t":
            return make_smallT_instance(self.gamma, self.small_t_eps, self.step_size, self.T, phi=self.phi)
        return self.custom_dist

    def to_dict(self) -> Dict[str, Any]:
        out = {"tail": self.phi.to_dict(), "loss": self.loss.kind, "distribution": self.dist_kind,
               "gamma": self.gamma, "eta": self.step_size, "T": int(self.T), "n": int(self.n),
               "delta": self.delta, "K": self.K, "algo": self.algo}
        if self.dist_kind == "small_t":
            out["eps"] = self.small_t_eps
        if self.dist_kind == "big_t" and self.eps is not None:
            out["eps"] = self.big_t_eps
        if self.dist_kind == "custom":
            out["custom_distribution"] = self.custom_dist.to_dict()
        return out


@dataclass(frozen=True)
class SweepCell:
    index: int
    gamma: float
    T: int
    n: int

    @property
    def label(self) -> str:
        return f"g={self.gamma:g}/T={self.T}/n={self.n}"


@dataclass(frozen=True)
class SweepConfig:
    """Grid over γ × T × n around a base trial configuration."""

    base: TrialConfig
    T: Sequence[int]
    n: Sequence[int]
    gamma: Sequence[float] = field(default_factory=tuple)
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    axis: Optional[str] = None
    min_trials: int = 1

    def __post_init__(self):
        object.__setattr__(self, "T", tuple(int(t) for t in self.T))
        object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        object.__setattr__(self, "gamma", tuple(float(g) for g in (self.gamma or (self.base.gamma,))))
        if not (self.T and self.n and self.gamma):
            raise ValueError("sweep grid is empty")
        if self.trials < 1 or self.trials < self.min_trials:
            raise ValueError(f"trials = {self.trials} is below the minimum {max(1, self.min_trials)}")
        if self.axis not in (None, "T", "n"):
            raise ValueError(f"sweep axis must be 'T' or 'n', got {self.axis!r}")

    def cells(self) -> List[SweepCell]:
        return [SweepCell(i, g, t, n)
                for i, (g, t, n) in enumerate(itertools.product(self.gamma, self.T, self.n))]

    def cell_config(self, cell: SweepCell) -> TrialConfig:
        return replace(self.base, gamma=cell.gamma, T=cell.T, n=cell.n)

    def to_dict(self) -> Dict[str, Any]:
        return {"base": self.base.to_dict(), "T": list(self.T), "n": list(self.n), "gamma": list(self.gamma),
                "trials": self.trials, "seed": self.seed, "axis": self.axis, "min_trials": self.min_trials}
