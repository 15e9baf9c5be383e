"""SGD with replacement: i_t uniform on [n], w_{t+1} = w_t − η ℓ'(w_t·z_{i_t}) z_{i_t}.

Returns the average iterate w̄_T = (1/T) Σ_{t=1}^T w_t. Index draws come from
stream 1 of the trial seed, in fixed-size chunks.
"""

from typing import List, Optional, Sequence

import numpy as np

from instances import Dataset
from losses import LossFunction
from utils.numerics import NeumaierAccumulator, compensated_sum, pairdot, rowdot, rownorm
from utils.run_key import make_rng

from . import StepRecorder, Trajectory, check_step_size, check_steps

INDEX_CHUNK = 4096


def run_sgd_batch(loss: LossFunction, datasets: Sequence[Dataset], eta: float, T: int, seeds: Sequence[int],
                  reference: Optional[np.ndarray] = None, record_every: int = 1,
                  keep_iterates: bool = False) -> List[Trajectory]:
    check_step_size(eta, loss.beta)
    check_steps(T)
    if len(datasets) != len(seeds) or not datasets:
        raise ValueError("need one seed per dataset and at least one dataset")
    dist = datasets[0].dist
    if any(d.dist is not dist for d in datasets):
        raise ValueError("all datasets in a batch must share one distribution")
    if any(d.n == 0 for d in datasets):
        raise ValueError("SGD needs nonempty datasets")
    Z = dist.support
    R = len(datasets)
    counts = np.stack([d.counts.astype(float) for d in datasets])
    n = counts.sum(axis=1)
    rngs = [make_rng(s, stream=1) for s in seeds]
    ref = None if reference is None else np.broadcast_to(np.asarray(reference, dtype=float), (R, dist.dim))

    W = np.zeros((R, dist.dim))
    rec = StepRecorder(T, record_every, keep_iterates)
    loss_acc = NeumaierAccumulator(R)
    ref_acc = NeumaierAccumulator(R)
    w_acc = NeumaierAccumulator((R, dist.dim))
    picks = None
    for t in range(1, T + 1):
        pos = (t - 1) % INDEX_CHUNK
        if pos == 0:
            size = min(INDEX_CHUNK, T - t + 1)
            picks = np.stack([d.indices[rng.integers(0, d.n, size=size)].astype(np.intp)
                              for d, rng in zip(datasets, rngs)])
        Zsel = Z[picks[:, pos]]
        m = pairdot(W, Zsel)
        loss_acc.add(loss.eval(m))
        if ref is not None:
            ref_acc.add(loss.eval(pairdot(ref, Zsel)))
        w_acc.add(W)
        if rec.due(t):
            rec.record(t, rownorm(W), compensated_sum(counts * loss.eval(rowdot(W, Z))) / n)
        rec.keep_iterate(W)
        if t == T:
            break
        W = W - eta * (loss.deriv(m)[:, None] * Zsel)

    avg = w_acc.value() / T
    avg_risk = compensated_sum(counts * loss.eval(rowdot(avg, Z))) / n
    loss_sum = loss_acc.value()
    ref_sum = ref_acc.value()
    out = []
    for r in range(R):
        steps, norms, risks, its = rec.rows(r)
        out.append(Trajectory(algo="sgd", eta=float(eta), T=int(T), final_model=avg[r].copy(),
                              final_emp_risk=float(avg_risk[r]), steps=steps, norms=norms, emp_risks=risks,
                              seed=int(seeds[r]), last_iterate=W[r].copy(), loss_sum=float(loss_sum[r]),
                              reference_loss_sum=None if ref is None else float(ref_sum[r]),
                              iterates=its))
    return out


def run_sgd(loss: LossFunction, data: Dataset, eta: float, T: int, seed: int,
            reference: Optional[np.ndarray] = None, record_every: int = 1,
            keep_iterates: bool = False) -> Trajectory:
    return run_sgd_batch(loss, [data], eta, T, [seed], reference=reference, record_every=record_every,
                         keep_iterates=keep_iterates)[0]
