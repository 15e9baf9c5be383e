"""One Monte Carlo trial: sample S, train, measure exact risk, compare with the bounds."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from bounds.lemmas import (norm_report, opt_error_report, reference_point, sgd_empirical_report,
                           sgd_regret_bound, sgd_regret_delivered_bound)
from bounds.lower import lower_bound_bigT, lower_bound_smallT, lower_risk_bound
from bounds.report import BoundReport
from bounds.upper import upper_risk_bound
from instances import DiscreteDistribution
from instances.risk import population_risk_batch
from instances.sampling import sample_datasets, stack_counts
from optimizers import Trajectory
from optimizers.gd import run_gd_batch
from optimizers.sgd import run_sgd_batch
from utils.constants import DESCENT_ATOL, LEMMA_ATOL
from utils.errors import InfeasibleError
from utils.numerics import rownorm

from .configs import TrialConfig

DETERMINISTIC = "deterministic"
PROBABILISTIC = "probabilistic"
DIAGNOSTIC = "diagnostic"


@dataclass
class Violation:
    name: str
    slack: float
    tolerance: float
    kind: str

    @property
    def violated(self) -> bool:
        return bool(self.slack > self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {"violated": self.violated, "slack": self.slack, "tolerance": self.tolerance, "kind": self.kind}


@dataclass
class TrialResult:
    config: Dict[str, Any]
    seed: int
    measured: Dict[str, float]
    bounds: Dict[str, BoundReport]
    violations: Dict[str, Violation]
    trajectory: Optional[Trajectory] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"config": self.config, "seed": self.seed, "measured": dict(self.measured),
                "bounds": {k: b.to_dict() for k, b in self.bounds.items()},
                "violations": {k: v.to_dict() for k, v in self.violations.items()}}


@dataclass
class CellBounds:
    """Seed-independent quantities shared by every trial of one configuration."""

    dist: DiscreteDistribution
    eta: float
    eps: float
    reference: np.ndarray
    reports: Dict[str, BoundReport]

    @property
    def reference_norm(self) -> float:
        return float(np.linalg.norm(self.reference))


def instance_lower_bound(cfg: TrialConfig, dist: DiscreteDistribution, eta: float) -> Optional[BoundReport]:
    """The lower-bound branch proved for this instance and loss, if any."""
    if cfg.dist_kind == "big_t" and cfg.loss.kind == "quadratic_extension":
        return lower_bound_bigT(cfg.phi, dist.gamma, eta, cfg.T, cfg.n, cfg.loss.beta, eps=cfg.big_t_eps)
    if cfg.dist_kind == "small_t" and cfg.loss.kind == "linear_extension":
        return lower_bound_smallT(cfg.phi, dist.gamma, eta, cfg.T, eps=cfg.small_t_eps)
    return None


def compute_cell_bounds(cfg: TrialConfig, dist: Optional[DiscreteDistribution] = None) -> CellBounds:
    dist = dist or cfg.distribution()
    eta = cfg.step_size
    gamma = dist.effective_gamma
    beta = cfg.loss.beta
    reports: Dict[str, BoundReport] = {}
    try:
        upper = upper_risk_bound(cfg.phi, gamma, eta, cfg.T, cfg.n, cfg.delta, cfg.K, beta=beta)
        eps = upper.diagnostics["eps"]
    except InfeasibleError as e:
        upper = BoundReport.infeasible("upper_risk", {"gamma": gamma, "eta": eta, "T": cfg.T, "n": cfg.n}, str(e))
        eps = cfg.phi.value_at_zero
    reports["upper_risk"] = upper
    w_ref = reference_point(cfg.phi, gamma, eps, dist.unit_witness)
    a = float(np.linalg.norm(w_ref))
    reports["norm"] = norm_report(a, eta, eps, cfg.T)
    if cfg.algo == "gd":
        reports["opt_error"] = opt_error_report(a, eta, eps, cfg.T)
    else:
        reports["sgd_empirical"] = sgd_empirical_report(a, eta, eps, cfg.T, beta, cfg.delta)
        reports["sgd_regret"] = BoundReport("sgd_regret", {"w_norm": a, "eta": eta, "T": cfg.T},
                                            {"regret": sgd_regret_bound(a, eta, cfg.T)})
    if cfg.dist_kind in ("big_t", "small_t"):
        reports["lower_risk"] = lower_risk_bound(
            cfg.phi, dist.gamma, eta, cfg.T, cfg.n, beta=beta,
            eps_big=cfg.big_t_eps if cfg.dist_kind == "big_t" else None,
            eps_small=cfg.small_t_eps if cfg.dist_kind == "small_t" else None)
        inst = instance_lower_bound(cfg, dist, eta)
        if inst is not None:
            reports["instance_lower"] = inst
    return CellBounds(dist=dist, eta=eta, eps=eps, reference=w_ref, reports=reports)


def run_trials_batch(cfg: TrialConfig, seeds: Sequence[int], cell: Optional[CellBounds] = None,
                     keep_trajectories: bool = False) -> List[TrialResult]:
    """R trials trained as one batch; result r equals run_trial(cfg, seeds[r])."""
    cell = cell or compute_cell_bounds(cfg)
    dist, eta, T = cell.dist, cell.eta, cfg.T
    datasets = sample_datasets(dist, cfg.n, seeds)
    record_every = cfg.record_every or T
    if cfg.algo == "gd":
        trajs = run_gd_batch(cfg.loss, dist, stack_counts(datasets), eta, T, record_every=record_every,
                             seeds=seeds)
    else:
        trajs = run_sgd_batch(cfg.loss, datasets, eta, T, seeds, reference=cell.reference,
                              record_every=record_every)
    W = np.stack([t.final_model for t in trajs])
    pop = population_risk_batch(W, cfg.loss, dist)
    norms = rownorm(W)

    reports = cell.reports
    a = cell.reference_norm
    upper = reports["upper_risk"]
    echo = cfg.to_dict()
    out = []
    for r, traj in enumerate(trajs):
        measured = {"w_norm": float(norms[r]), "emp_risk": traj.final_emp_risk, "pop_risk": float(pop[r])}
        v: Dict[str, Violation] = {}
        norm_name = "norm" if cfg.algo == "gd" else "norm_sgd"
        v[norm_name] = Violation(norm_name, measured["w_norm"] - reports["norm"].value, LEMMA_ATOL, DETERMINISTIC)
        if upper.feasible:
            v["upper_risk"] = Violation("upper_risk", measured["pop_risk"] - upper.value, 0.0, PROBABILISTIC)
        if cfg.algo == "gd":
            measured["max_increase"] = traj.max_increase
            v["descent"] = Violation("descent", traj.max_increase, DESCENT_ATOL, DETERMINISTIC)
            v["opt_error"] = Violation("opt_error", measured["emp_risk"] - reports["opt_error"].value,
                                       LEMMA_ATOL, DETERMINISTIC)
        else:
            avg_loss = traj.loss_sum / T
            avg_ref = traj.reference_loss_sum / T
            measured.update({"last_norm": float(np.linalg.norm(traj.last_iterate)),
                             "avg_step_loss": avg_loss, "avg_reference_loss": avg_ref})
            v["regret_sgd"] = Violation("regret_sgd", avg_loss - 2.0 * avg_ref - sgd_regret_delivered_bound(a, eta, T),
                                        LEMMA_ATOL, DETERMINISTIC)
            v["regret_sgd_stated"] = Violation("regret_sgd_stated", avg_loss - avg_ref - reports["sgd_regret"].value,
                                               LEMMA_ATOL, DIAGNOSTIC)
            v["sgd_empirical"] = Violation("sgd_empirical", measured["emp_risk"] - reports["sgd_empirical"].value,
                                           0.0, PROBABILISTIC)
        out.append(TrialResult(config=echo, seed=int(seeds[r]), measured=measured, bounds=reports,
                               violations=v, trajectory=traj if keep_trajectories else None))
    return out


def run_trial(cfg: TrialConfig, seed: int, keep_trajectory: bool = False) -> TrialResult:
    return run_trials_batch(cfg, [seed], keep_trajectories=keep_trajectory)[0]
