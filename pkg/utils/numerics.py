"""Row-wise arithmetic helpers shared by the trainers and risk evaluators.

Reductions run over the short trailing axes (support points, coordinates) with
explicit loops so a row's result never depends on how many rows share the batch.
"""

import numpy as np


def compensated_sum(terms: np.ndarray) -> np.ndarray:
    """Neumaier summation along the last axis."""
    terms = np.asarray(terms, dtype=float)
    total = np.zeros(terms.shape[:-1])
    comp = np.zeros(terms.shape[:-1])
    for j in range(terms.shape[-1]):
        x = terms[..., j]
        t = total + x
        big = np.abs(total) >= np.abs(x)
        comp = comp + np.where(big, (total - t) + x, (x - t) + total)
        total = t
    return total + comp


def rowdot(W: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """Margins W·Z^T for W (R, d) and Z (k, d), shape (R, k)."""
    W = np.asarray(W, dtype=float)
    Z = np.asarray(Z, dtype=float)
    out = np.zeros((W.shape[0], Z.shape[0]))
    for c in range(W.shape[1]):
        out = out + W[:, c:c + 1] * Z[None, :, c]
    return out


def rownorm(W: np.ndarray) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    sq = np.zeros(W.shape[0])
    for c in range(W.shape[1]):
        sq = sq + W[:, c] * W[:, c]
    return np.sqrt(sq)


def weighted_direction(coef: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """Σ_j coef[r, j]·z_j with compensated summation, shape (R, d)."""
    coef = np.asarray(coef, dtype=float)
    out = np.empty((coef.shape[0], Z.shape[1]))
    for c in range(Z.shape[1]):
        out[:, c] = compensated_sum(coef * Z[None, :, c])
    return out


def pairdot(W: np.ndarray, Zsel: np.ndarray) -> np.ndarray:
    """Row-wise inner products W[r]·Zsel[r] for two (R, d) arrays."""
    out = np.zeros(W.shape[0])
    for c in range(W.shape[1]):
        out = out + W[:, c] * Zsel[:, c]
    return out


class NeumaierAccumulator:
    """Running compensated sum of equally shaped arrays."""

    def __init__(self, shape):
        self.total = np.zeros(shape)
        self.comp = np.zeros(shape)

    def add(self, x: np.ndarray):
        t = self.total + x
        big = np.abs(self.total) >= np.abs(x)
        self.comp = self.comp + np.where(big, (self.total - t) + x, (x - t) + self.total)
        self.total = t

    def value(self) -> np.ndarray:
        return self.total + self.comp
