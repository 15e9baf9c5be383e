"""Reproducible i.i.d. sampling from a discrete distribution."""

from typing import List, Sequence

import numpy as np

from utils.run_key import make_rng

from . import Dataset, DiscreteDistribution


def sample_indices(dist: DiscreteDistribution, n: int, seed: int) -> np.ndarray:
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    rng = make_rng(seed, stream=0)
    return rng.choice(dist.size, size=int(n), p=dist.probs)


def sample_dataset(dist: DiscreteDistribution, n: int, seed: int) -> Dataset:
    return Dataset.from_indices(dist, sample_indices(dist, n, seed), seed=int(seed))


def sample_datasets(dist: DiscreteDistribution, n: int, seeds: Sequence[int]) -> List[Dataset]:
    """One dataset per seed; each equals sample_dataset(dist, n, seed)."""
    return [sample_dataset(dist, n, s) for s in seeds]


def stack_counts(datasets: Sequence[Dataset]) -> np.ndarray:
    """(R, k) matrix of per-support counts."""
    return np.stack([np.asarray(d.counts, dtype=float) for d in datasets])
