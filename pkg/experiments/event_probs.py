"""Monte Carlo check of the event probabilities behind the big-T lower bound.

S ~ D^n on the big-T instance and an independent validation example z':
  A1 = {z' = z3 and z3 ∉ S},  A2 = {fraction of z2 in S ∈ [1/32, 1/8]}.
Floors: Pr(A1) ≥ 1/(2en), Pr(A2 | A1) ≥ 1/60, Pr(A1 ∩ A2) ≥ 1/(120en).
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from scipy.stats import binom
from statsmodels.stats.proportion import proportion_confint

from instances.hard import make_bigT_instance
from utils.constants import BIG_T_MIN_N, CONFIDENCE
from utils.run_key import make_rng

_CHUNK = 1 << 18
ORACLE_Z = 3.0


@dataclass
class EventEstimate:
    name: str
    count: int
    trials: int
    floor: float
    ci_low: float
    ci_high: float
    analytic: Optional[float] = None

    @property
    def estimate(self) -> float:
        return self.count / self.trials if self.trials else math.nan

    @property
    def stderr(self) -> float:
        p = self.analytic if self.analytic is not None else self.estimate
        return math.sqrt(p * (1.0 - p) / self.trials) if self.trials else math.nan

    @property
    def z_score(self) -> Optional[float]:
        if self.analytic is None or not self.stderr > 0:
            return None
        return (self.estimate - self.analytic) / self.stderr

    @property
    def exceeds_floor(self) -> bool:
        """Lower confidence limit above the floor."""
        return self.ci_low >= self.floor

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "count": self.count, "trials": self.trials, "estimate": self.estimate,
                "ci_low": self.ci_low, "ci_high": self.ci_high, "floor": self.floor,
                "exceeds_floor": self.exceeds_floor, "analytic": self.analytic, "z_score": self.z_score}


@dataclass
class ProbReport:
    gamma: float
    n: int
    samples: int
    seed: int
    confidence: float
    events: Dict[str, EventEstimate] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Every floor cleared and Pr(A1) within ORACLE_Z standard errors of its closed form."""
        a1 = self.events.get("A1")
        oracle_ok = a1 is None or a1.z_score is None or abs(a1.z_score) <= ORACLE_Z
        return oracle_ok and all(e.exceeds_floor for e in self.events.values())

    def to_dict(self) -> Dict[str, Any]:
        return {"gamma": self.gamma, "n": self.n, "samples": self.samples, "seed": self.seed,
                "confidence": self.confidence, "passed": self.passed,
                "events": {k: e.to_dict() for k, e in self.events.items()}}


def analytic_event_probs(n: int) -> Dict[str, float]:
    """Closed forms: Pr(A1) = (1/n)(1−1/n)^n; given A1 the z2 count is Binomial(n, 5/64)."""
    p_a1 = (1.0 / n) * (1.0 - 1.0 / n) ** n
    lo, hi = math.ceil(n / 32.0), math.floor(n / 8.0)
    p_a2 = float(binom.cdf(hi, n, 5.0 / 64.0) - binom.cdf(lo - 1, n, 5.0 / 64.0)) if hi >= lo else 0.0
    return {"A1": p_a1, "A2_given_A1": p_a2, "A1_and_A2": p_a1 * p_a2}


def estimate_event_probs(gamma: float, n: int, samples: int, seed: int,
                         confidence: float = CONFIDENCE) -> ProbReport:
    if int(n) != n or n < BIG_T_MIN_N:
        raise ValueError(f"event probabilities need n >= {BIG_T_MIN_N}, got {n!r}")
    if int(samples) != samples or samples < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    n, samples = int(n), int(samples)
    dist = make_bigT_instance(gamma, n)
    probs = dist.probs
    rng = make_rng(seed, stream=2)
    a1 = a1a2 = 0
    lo, hi = n / 32.0, n / 8.0
    remaining = samples
    while remaining > 0:
        size = min(_CHUNK, remaining)
        counts = rng.multinomial(n, probs, size=size)
        z3_val = rng.random(size) < probs[2]
        ev1 = z3_val & (counts[:, 2] == 0)
        ev2 = (counts[:, 1] >= lo) & (counts[:, 1] <= hi)
        a1 += int(np.count_nonzero(ev1))
        a1a2 += int(np.count_nonzero(ev1 & ev2))
        remaining -= size

    alpha = 1.0 - confidence
    exact = analytic_event_probs(n)

    def estimate(name, count, trials, floor):
        if trials:
            ci_low, ci_high = proportion_confint(count, trials, alpha=alpha, method="wilson")
        else:
            ci_low, ci_high = 0.0, 1.0
        return EventEstimate(name=name, count=count, trials=trials, floor=floor, ci_low=float(ci_low),
                             ci_high=float(ci_high), analytic=exact[name])

    report = ProbReport(gamma=gamma, n=n, samples=samples, seed=int(seed), confidence=confidence)
    report.events["A1"] = estimate("A1", a1, samples, 1.0 / (2.0 * math.e * n))
    report.events["A2_given_A1"] = estimate("A2_given_A1", a1a2, a1, 1.0 / 60.0)
    report.events["A1_and_A2"] = estimate("A1_and_A2", a1a2, samples, 1.0 / (120.0 * math.e * n))
    return report
