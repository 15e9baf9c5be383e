"""
Trainers

Full-batch gradient descent and SGD with replacement, both started at w_1 = 0:
- gd.py: run_gd / run_gd_batch
- sgd.py: run_sgd / run_sgd_batch (average iterate)
- diagnostics.py: gradients and the self-bounding check
Batch trainers run R independent trials as rows of one array; row r of a batch
is bit-identical to the single-trial run.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from utils.constants import ETA_REL_SLACK


@dataclass
class Trajectory:
    """Scalar per-step summaries plus the returned model."""

    algo: str
    eta: float
    T: int
    final_model: np.ndarray
    final_emp_risk: float
    steps: np.ndarray
    norms: np.ndarray
    emp_risks: np.ndarray
    seed: Optional[int] = None
    # GD: largest one-step change L̂(w_{t+1}) − L̂(w_t)
    max_increase: Optional[float] = None
    # SGD: w_T, Σ_t ℓ(w_t·z_{i_t}) and Σ_t ℓ(w·z_{i_t}) for the reference point w
    last_iterate: Optional[np.ndarray] = None
    loss_sum: Optional[float] = None
    reference_loss_sum: Optional[float] = None
    iterates: Optional[np.ndarray] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def iterates_summary(self) -> List[Tuple[int, float, float]]:
        return [(int(t), float(a), float(b)) for t, a, b in zip(self.steps, self.norms, self.emp_risks)]

    def to_dict(self) -> Dict[str, Any]:
        out = {"algo": self.algo, "eta": self.eta, "T": self.T, "seed": self.seed,
               "final_model": self.final_model.tolist(), "final_emp_risk": self.final_emp_risk,
               "iterates_summary": [list(r) for r in self.iterates_summary]}
        if self.max_increase is not None:
            out["max_increase"] = self.max_increase
        if self.last_iterate is not None:
            out["last_iterate"] = self.last_iterate.tolist()
            out["loss_sum"] = self.loss_sum
            out["reference_loss_sum"] = self.reference_loss_sum
        return out


def check_step_size(eta: float, beta: float):
    """0 < η ≤ 1/(2β)."""
    limit = 1.0 / (2.0 * beta)
    if not (eta > 0 and eta <= limit * (1.0 + ETA_REL_SLACK)):
        raise ValueError(f"step size eta={eta!r} outside (0, 1/(2 beta)] = (0, {limit:.6g}]")


def check_steps(T: int):
    if int(T) != T or T < 1:
        raise ValueError(f"T must be a positive integer, got {T!r}")


class StepRecorder:
    """Collects (t, ‖w_t‖, L̂(w_t)) rows at t = 1, 1 + k, 1 + 2k, ... and t = T."""

    def __init__(self, T: int, record_every: int = 1, keep_iterates: bool = False):
        if int(record_every) != record_every or record_every < 1:
            raise ValueError(f"record_every must be a positive integer, got {record_every!r}")
        self.T = int(T)
        self.every = int(record_every)
        self.keep = keep_iterates
        self.steps: List[int] = []
        self.norms: List[np.ndarray] = []
        self.risks: List[np.ndarray] = []
        self.iterates: List[np.ndarray] = []

    def due(self, t: int) -> bool:
        return (t - 1) % self.every == 0 or t == self.T

    def record(self, t: int, norms: np.ndarray, risks: np.ndarray):
        self.steps.append(t)
        self.norms.append(np.array(norms, copy=True))
        self.risks.append(np.array(risks, copy=True))

    def keep_iterate(self, W: np.ndarray):
        if self.keep:
            self.iterates.append(np.array(W, copy=True))

    def rows(self, r: int):
        steps = np.array(self.steps, dtype=np.int64)
        norms = np.array([a[r] for a in self.norms])
        risks = np.array([a[r] for a in self.risks])
        its = np.stack([a[r] for a in self.iterates]) if self.keep and self.iterates else None
        return steps, norms, risks, its
