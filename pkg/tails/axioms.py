"""Grid certificates for the tail-function axioms.

These are sampled numerical checks, not proofs; violations are reported,
never raised.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from utils.constants import (AXIOM_ATOL, GRID_POINTS, GRID_TAIL_LEVEL, GRID_U_MAX_MIN,
                             SMOOTH_SLACK)

from . import TailFunction
from .inverse import tail_inverse

# below this φ is at the edge of float range and strict decrease is not observable
_TINY = 1e-290


@dataclass(frozen=True)
class GridSpec:
    """Evaluation nodes on [u_min, u_max]: uniform up to 20, geometric beyond."""

    u_max: float
    points: int = GRID_POINTS
    u_min: float = 0.0

    def __post_init__(self):
        if self.points < 2 or not self.u_max > self.u_min:
            raise ValueError(f"bad grid: [{self.u_min}, {self.u_max}] with {self.points} points")

    def nodes(self) -> np.ndarray:
        dense_top = min(self.u_max, GRID_U_MAX_MIN)
        if self.u_max > dense_top * (1 + 1e-12) and dense_top > max(self.u_min, 0.0):
            half = self.points // 2
            lin = np.linspace(self.u_min, dense_top, half)
            geo = np.geomspace(dense_top, self.u_max, self.points - half + 1)[1:]
            u = np.concatenate([lin, geo])
        else:
            u = np.linspace(self.u_min, self.u_max, self.points)
        if self.u_min < 0 < self.u_max:
            u = np.concatenate([u, [0.0]])
        return np.unique(u)


def default_grid(phi: TailFunction, points: int = GRID_POINTS) -> GridSpec:
    level = min(GRID_TAIL_LEVEL, 0.5 * phi.value_at_zero)
    return GridSpec(u_max=max(GRID_U_MAX_MIN, 5.0 * tail_inverse(phi, level)), points=points)


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    worst_violation: float
    at: Optional[float] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": bool(self.passed),
                "worst_violation": float(self.worst_violation),
                "at": None if self.at is None else float(self.at), "detail": self.detail}


@dataclass
class AxiomReport:
    """Per-axiom pass/fail with worst violation; also used for loss membership."""

    subject: str
    checks: List[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_violation(self) -> float:
        return max((c.worst_violation for c in self.checks), default=0.0)

    def failures(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def get(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {"subject": self.subject, "passed": self.passed,
                "worst_violation": self.worst_violation,
                "failures": self.failures(),
                "checks": [c.to_dict() for c in self.checks]}


def _worst(values: np.ndarray, where: np.ndarray):
    """Largest positive entry of values and its grid location (0 if none)."""
    if values.size == 0:
        return 0.0, None
    i = int(np.argmax(values))
    return max(0.0, float(values[i])), float(where[i])


def check_tail_axioms(phi: TailFunction, grid: Optional[GridSpec] = None,
                      atol: float = AXIOM_ATOL) -> AxiomReport:
    grid = grid or default_grid(phi)
    u = grid.nodes()
    f = np.asarray(phi.eval(u), dtype=float)
    d = np.asarray(phi.deriv(u), dtype=float)
    du = np.diff(u)
    report = AxiomReport(subject=phi.describe())

    v, at = _worst(-f, u)
    report.checks.append(AxiomCheck("nonnegative", v <= atol, v, at))

    df = np.diff(f)
    v, at = _worst(df, u[1:])
    flat = (df >= 0) & (f[:-1] > _TINY)
    strict_ok = not bool(np.any(flat))
    report.checks.append(AxiomCheck(
        "strictly_decreasing", v <= atol and strict_ok, v, at,
        "" if strict_ok else f"{int(flat.sum())} flat grid steps"))

    v, at = _worst(-np.diff(d), u[1:])
    report.checks.append(AxiomCheck("convex", v <= atol, v, at, "phi' nondecreasing"))

    v, at = _worst(np.abs(d) - 1.0, u)
    report.checks.append(AxiomCheck("lipschitz_1", v <= atol, v, at))

    ratio = np.abs(np.diff(d)) / du
    v, at = _worst(ratio - phi.beta * SMOOTH_SLACK, u[1:])
    report.checks.append(AxiomCheck("beta_smooth", v <= atol, v, at, f"beta={phi.beta:.6g}"))

    v0 = 0.5 - float(f[0])
    report.checks.append(AxiomCheck("endpoint_value", v0 <= 0, max(0.0, v0), 0.0, "phi(0) >= 1/2"))
    s0 = 0.5 - abs(float(d[0]))
    report.checks.append(AxiomCheck("endpoint_slope", s0 <= 0, max(0.0, s0), 0.0, "|phi'(0)| >= 1/2"))

    tail = float(f[-1]) - 1e-6 * max(float(f[0]), 0.0)
    report.checks.append(AxiomCheck("vanishing", tail <= 0, max(0.0, tail), float(u[-1])))
    return report
