"""Cell-by-cell verification of a sweep against the lemmas and risk bounds."""

from dataclasses import dataclass, field
from typing import Any, Dict, List

from scipy.stats import norm

from utils.constants import CONFIDENCE

from .trial import DETERMINISTIC


@dataclass
class VerificationReport:
    cells_checked: int
    failures: List[Dict[str, Any]] = field(default_factory=list)
    skipped: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "cells_checked": self.cells_checked,
                "failures": list(self.failures), "skipped": list(self.skipped)}


def verify_bounds(sweep, confidence: float = CONFIDENCE) -> VerificationReport:
    """Per cell: no deterministic lemma violations; mean risk ≤ upper bound;
    on hard instances the one-sided lower confidence limit of the mean risk
    ≥ the instance's lower bound; SGD high-probability violation fraction
    ≤ δ plus the Wilson half-width."""
    z = float(norm.ppf(confidence))
    report = VerificationReport(cells_checked=len(sweep.cells))
    for c in sweep.cells:
        where = {"cell": c.index, "gamma": c.gamma, "T": c.T, "n": c.n}
        if c.error is not None:
            report.failures.append({**where, "check": "error", "slack": None, "detail": c.error})
            continue
        for name, count in sorted(c.violation_counts.items()):
            if c.violation_kinds.get(name) == DETERMINISTIC and count > 0:
                report.failures.append({**where, "check": name, "slack": c.max_slack.get(name),
                                        "detail": f"{count} of {c.trials} trials"})
        if c.upper_bound is not None and c.mean_risk > c.upper_bound:
            report.failures.append({**where, "check": "upper_risk", "slack": c.mean_risk - c.upper_bound,
                                    "detail": f"mean risk {c.mean_risk:.6g} > bound {c.upper_bound:.6g}"})
        if c.instance_lower_bound is not None:
            lcl = c.mean_risk - z * c.stderr
            if lcl < c.instance_lower_bound:
                report.failures.append({**where, "check": "lower_risk", "slack": c.instance_lower_bound - lcl,
                                        "detail": f"lower confidence limit {lcl:.6g} < bound {c.instance_lower_bound:.6g}"})
        if c.sgd_violation_fraction is not None and c.sgd_ci is not None and c.delta is not None:
            half = 0.5 * (c.sgd_ci[1] - c.sgd_ci[0])
            if c.sgd_violation_fraction > c.delta + half:
                report.failures.append({**where, "check": "sgd_empirical",
                                        "slack": c.sgd_violation_fraction - c.delta - half,
                                        "detail": f"fraction {c.sgd_violation_fraction:.4g} > delta {c.delta:g}"})
        if c.upper_bound is None:
            report.skipped.append({**where, "check": "upper_risk", "detail": "bound infeasible"})
    return report
