"""Full-batch gradient descent w_{t+1} = w_t − η∇L̂(w_t) from w_1 = 0."""

from typing import List, Optional, Sequence

import numpy as np

from instances import Dataset, DiscreteDistribution
from losses import LossFunction
from utils.numerics import compensated_sum, rowdot, rownorm, weighted_direction

from . import StepRecorder, Trajectory, check_step_size, check_steps


def run_gd_batch(loss: LossFunction, dist: DiscreteDistribution, counts: np.ndarray, eta: float, T: int,
                 record_every: int = 1, keep_iterates: bool = False,
                 seeds: Optional[Sequence[int]] = None) -> List[Trajectory]:
    """GD on R count-weighted datasets over the same support; returns w_T per row.

    T counts iterates, so T − 1 updates are applied.
    """
    check_step_size(eta, loss.beta)
    check_steps(T)
    counts = np.asarray(counts, dtype=float)
    if counts.ndim != 2 or counts.shape[1] != dist.size:
        raise ValueError(f"counts must have shape (R, {dist.size}), got {counts.shape}")
    n = counts.sum(axis=1)
    if np.any(n <= 0):
        raise ValueError("gradient descent needs nonempty datasets")
    Z = dist.support
    R = counts.shape[0]
    W = np.zeros((R, dist.dim))
    rec = StepRecorder(T, record_every, keep_iterates)
    max_inc = np.full(R, -np.inf)
    prev = None
    for t in range(1, T + 1):
        margins = rowdot(W, Z)
        risk = compensated_sum(counts * loss.eval(margins)) / n
        if prev is not None:
            max_inc = np.maximum(max_inc, risk - prev)
        prev = risk
        if rec.due(t):
            rec.record(t, rownorm(W), risk)
        rec.keep_iterate(W)
        if t == T:
            break
        grad = weighted_direction(counts * loss.deriv(margins), Z) / n[:, None]
        W = W - eta * grad

    out = []
    for r in range(R):
        steps, norms, risks, its = rec.rows(r)
        inc = float(max_inc[r]) if np.isfinite(max_inc[r]) else 0.0
        out.append(Trajectory(algo="gd", eta=float(eta), T=int(T), final_model=W[r].copy(),
                              final_emp_risk=float(prev[r]), steps=steps, norms=norms, emp_risks=risks,
                              seed=None if seeds is None else int(seeds[r]), max_increase=inc,
                              iterates=its))
    return out


def run_gd(loss: LossFunction, data: Dataset, eta: float, T: int, record_every: int = 1,
           keep_iterates: bool = False) -> Trajectory:
    traj = run_gd_batch(loss, data.dist, data.counts[None, :], eta, T, record_every=record_every,
                        keep_iterates=keep_iterates)[0]
    traj.seed = data.seed
    return traj
