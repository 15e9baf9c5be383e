import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

BOUND_KINDS = ("norm", "opt_error", "upper_risk", "lower_risk", "lower_risk_bigT", "lower_risk_smallT",
               "rademacher_gap", "sgd_empirical", "sgd_regret")


@dataclass
class BoundReport:
    """An evaluated bound: value = sum (or max) of its nonnegative terms."""

    kind: str
    inputs: Dict[str, Any]
    terms: Dict[str, float]
    combine: str = "sum"
    feasible: bool = True
    reason: str = ""
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    branches: Dict[str, "BoundReport"] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in BOUND_KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if self.combine not in ("sum", "max"):
            raise ValueError(f"combine must be 'sum' or 'max', got {self.combine!r}")
        for name, v in self.terms.items():
            if not (v >= 0):
                raise ValueError(f"bound term {name} = {v!r} is negative or NaN")

    @property
    def value(self) -> float:
        if not self.terms:
            return 0.0
        if self.combine == "max":
            return max(self.terms.values())
        return math.fsum(self.terms.values())

    @classmethod
    def infeasible(cls, kind: str, inputs: Dict[str, Any], reason: str,
                   diagnostics: Optional[Dict[str, Any]] = None) -> "BoundReport":
        return cls(kind=kind, inputs=inputs, terms={}, feasible=False, reason=reason,
                   diagnostics=dict(diagnostics or {}))

    def to_dict(self) -> Dict[str, Any]:
        out = {"kind": self.kind, "inputs": dict(self.inputs), "value": self.value,
               "terms": dict(self.terms), "combine": self.combine, "feasible": self.feasible}
        if self.reason:
            out["reason"] = self.reason
        if self.diagnostics:
            out["diagnostics"] = dict(self.diagnostics)
        if self.branches:
            out["branches"] = {k: b.to_dict() for k, b in self.branches.items()}
        return out
