"""Exact population risk over the support and empirical risk over a sample.

Single-model functions are the R = 1 case of the batch functions, so a
model's risk does not depend on the batch it is evaluated in.
"""

import numpy as np

from losses import LossFunction
from utils.numerics import compensated_sum, rowdot

from . import Dataset, DiscreteDistribution


def _as_batch(W, dim: int) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[1] != dim:
        raise ValueError(f"models must have dimension {dim}, got shape {W.shape}")
    return W


def population_risk_batch(W: np.ndarray, loss: LossFunction, dist: DiscreteDistribution) -> np.ndarray:
    W = _as_batch(W, dist.dim)
    values = loss.eval(rowdot(W, dist.support))
    return compensated_sum(values * dist.probs[None, :])


def population_risk_exact(w, loss: LossFunction, dist: DiscreteDistribution) -> float:
    """L(w) = Σ_j p_j ℓ(w·z_j)."""
    w = np.asarray(w, dtype=float)
    if w.shape != (dist.dim,):
        raise ValueError(f"w must have dimension {dist.dim}, got shape {w.shape}")
    return float(population_risk_batch(w[None, :], loss, dist)[0])


def empirical_risk_batch(W: np.ndarray, loss: LossFunction, dist: DiscreteDistribution,
                         counts: np.ndarray) -> np.ndarray:
    """Row r: (1/n_r) Σ_j counts[r, j]·ℓ(W[r]·z_j)."""
    W = _as_batch(W, dist.dim)
    counts = np.asarray(counts, dtype=float)
    n = counts.sum(axis=1)
    if np.any(n <= 0):
        raise ValueError("empirical risk of an empty dataset is undefined")
    values = loss.eval(rowdot(W, dist.support))
    return compensated_sum(values * counts) / n


def empirical_risk(w, loss: LossFunction, data: Dataset) -> float:
    """L̂(w) = (1/n) Σ_i ℓ(w·z_i)."""
    w = np.asarray(w, dtype=float)
    if w.shape != (data.dist.dim,):
        raise ValueError(f"w must have dimension {data.dist.dim}, got shape {w.shape}")
    return float(empirical_risk_batch(w[None, :], loss, data.dist, data.counts[None, :])[0])
