"""Epsilon conditions of the upper (ηγ²T ≤ g(ε)) and lower (ηγ²T ≥ g(ε)) bounds,
with g(ε) = (φ⁻¹(ε))²/ε."""

import math
from dataclasses import dataclass
from typing import Optional

from utils.constants import EPS_FLOOR, LOWER_EPS_CAP, TOL_EPS, UPPER_EPS_CAP
from utils.errors import InfeasibleError

from . import TailFunction
from .inverse import condition_value

# relative slack on the condition itself (float noise in φ⁻¹)
_COND_RTOL = 1e-12


@dataclass(frozen=True)
class EpsilonCondition:
    gamma: float
    eta: float
    T: int
    side: str = "upper"
    cap: Optional[float] = None

    def __post_init__(self):
        if self.side not in ("upper", "lower"):
            raise ValueError(f"side must be 'upper' or 'lower', got {self.side!r}")
        for name in ("gamma", "eta"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive, got {value!r}")
        if int(self.T) != self.T or self.T < 1:
            raise ValueError(f"T must be a positive integer, got {self.T!r}")
        if self.cap is None:
            object.__setattr__(self, "cap", UPPER_EPS_CAP if self.side == "upper" else LOWER_EPS_CAP)
        if not self.cap > 0:
            raise ValueError(f"cap must be positive, got {self.cap!r}")

    @property
    def target(self) -> float:
        """ηγ²T."""
        return self.eta * self.gamma ** 2 * self.T


def _check_cap(phi: TailFunction, cond: EpsilonCondition):
    if cond.cap > phi.value_at_zero:
        raise ValueError(f"cap {cond.cap:g} exceeds phi(0) = {phi.value_at_zero:g}")


def solve_epsilon_upper(phi: TailFunction, cond: EpsilonCondition,
                        tol: float = TOL_EPS, floor: float = EPS_FLOOR) -> float:
    """Largest ε ≤ cap with ηγ²T ≤ (φ⁻¹(ε))²/ε."""
    if cond.side != "upper":
        raise ValueError("solve_epsilon_upper needs an upper-side condition")
    _check_cap(phi, cond)
    target = cond.target

    def feasible(log_eps: float) -> bool:
        return target <= condition_value(phi, math.exp(log_eps)) * (1.0 + _COND_RTOL)

    hi = math.log(cond.cap)
    if feasible(hi):
        return float(cond.cap)
    lo = math.log(floor)
    if not feasible(lo):
        raise InfeasibleError(f"no eps in [{floor:g}, {cond.cap:g}] satisfies eta*gamma^2*T = {target:g} <= g(eps)")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return math.exp(lo)


def min_T_lower(phi: TailFunction, eta: float, gamma: float, eps: float) -> int:
    """Smallest T with ηγ²T ≥ (φ⁻¹(ε))²/ε."""
    return max(1, int(math.ceil(condition_value(phi, eps) * (1.0 - _COND_RTOL) / (eta * gamma ** 2))))


def solve_epsilon_lower(phi: TailFunction, cond: EpsilonCondition, tightest: bool = False,
                        tol: float = TOL_EPS, floor: float = EPS_FLOOR) -> float:
    """Largest ε ≤ cap with ηγ²T ≥ (φ⁻¹(ε))²/ε (the cap itself whenever feasible).

    With tightest=True, the smallest such ε instead, which gives the strongest
    lower bound. InfeasibleError carries the minimal feasible T at the cap.
    """
    if cond.side != "lower":
        raise ValueError("solve_epsilon_lower needs a lower-side condition")
    _check_cap(phi, cond)
    target = cond.target

    def feasible(log_eps: float) -> bool:
        return target >= condition_value(phi, math.exp(log_eps)) * (1.0 - _COND_RTOL)

    hi = math.log(cond.cap)
    if not feasible(hi):
        need = min_T_lower(phi, cond.eta, cond.gamma, cond.cap)
        raise InfeasibleError(
            f"eta*gamma^2*T = {target:g} is below g(cap) = {condition_value(phi, cond.cap):g}; "
            f"need T >= {need} at eps = {cond.cap:g}",
            min_T=need,
        )
    if not tightest:
        return float(cond.cap)
    lo = math.log(floor)
    if feasible(lo):
        return floor
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return math.exp(hi)
