"""Gradient of the empirical risk and the self-bounding check ‖∇L̂‖² ≤ 2βL̂."""

import numpy as np

from instances import Dataset
from instances.risk import empirical_risk
from losses import LossFunction
from utils.numerics import rowdot, weighted_direction


def empirical_gradient_batch(W: np.ndarray, loss: LossFunction, Z: np.ndarray,
                             counts: np.ndarray) -> np.ndarray:
    """Row r: (1/n_r) Σ_j counts[r, j]·ℓ'(W[r]·z_j)·z_j."""
    counts = np.asarray(counts, dtype=float)
    n = counts.sum(axis=1)
    coef = counts * loss.deriv(rowdot(W, Z))
    return weighted_direction(coef, Z) / n[:, None]


def empirical_gradient(w, loss: LossFunction, data: Dataset) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if data.n == 0:
        raise ValueError("gradient of an empty dataset is undefined")
    return empirical_gradient_batch(w[None, :], loss, data.dist.support, data.counts[None, :])[0]


def grad_norm_check(loss: LossFunction, data: Dataset, w) -> float:
    """‖∇L̂(w)‖² − 2β·L̂(w); nonpositive for class members."""
    g = empirical_gradient(w, loss, data)
    return float(g @ g - 2.0 * loss.beta * empirical_risk(w, loss, data))
