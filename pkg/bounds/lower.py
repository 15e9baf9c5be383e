"""Lower risk bounds on the two hard instances, with the constants of their proofs.

big-T:   (1/(120·e·n))·(β/(1152γ²))·(φ⁻¹(128ε))²,  ε ≤ 1/256, ηγ²T ≥ g(ε), n ≥ 35
small-T: (φ⁻¹(8ε))²/(1152γ²Tη),  ε ≤ 1/16, ηγ²T ≥ g(ε), 36ηγ²Tε ≥ φ⁻¹(8ε)
where g(ε) = (φ⁻¹(ε))²/ε. The combined bound is the larger feasible branch.
"""

import math
from typing import Callable, Optional

from tails import TailFunction
from tails.epsilon import EpsilonCondition, solve_epsilon_lower
from tails.inverse import condition_value, tail_inverse
from utils.constants import (BIG_T_MIN_N, EPS_FLOOR, HARD_INSTANCE_MAX_GAMMA, LOWER_EPS_CAP,
                             SMALL_T_EPS_CAP, TOL_EPS)
from utils.errors import InfeasibleError

from .report import BoundReport


def _smallest_feasible(ok: Callable[[float], bool], cap: float, tol: float = TOL_EPS,
                       floor: float = EPS_FLOOR) -> float:
    """Smallest ε in [floor, cap] with ok(ε), for ok monotone (false below, true above)."""
    hi = math.log(cap)
    if not ok(cap):
        raise InfeasibleError(f"condition fails at the cap eps = {cap:g}")
    lo = math.log(floor)
    if ok(floor):
        return floor
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(math.exp(mid)):
            hi = mid
        else:
            lo = mid
    return math.exp(hi)


def _big_t_conditions(phi, gamma, eta, T, n, eps) -> bool:
    return (eps <= LOWER_EPS_CAP and n >= BIG_T_MIN_N and gamma <= HARD_INSTANCE_MAX_GAMMA
            and eta * gamma ** 2 * T >= condition_value(phi, eps) * (1 - 1e-12))


def _small_t_conditions(phi, gamma, eta, T, eps) -> bool:
    target = eta * gamma ** 2 * T
    return (eps <= SMALL_T_EPS_CAP and gamma <= HARD_INSTANCE_MAX_GAMMA
            and target >= condition_value(phi, eps) * (1 - 1e-12)
            and 36.0 * target * eps >= tail_inverse(phi, 8.0 * eps))


def lower_bound_bigT(phi: TailFunction, gamma: float, eta: float, T: int, n: int, beta: float,
                     eps: Optional[float] = None, tightest: bool = False) -> BoundReport:
    inputs = {"tail": phi.to_dict(), "gamma": gamma, "eta": eta, "T": int(T), "n": int(n), "beta": beta}
    if n < BIG_T_MIN_N:
        return BoundReport.infeasible("lower_risk_bigT", inputs, f"n = {n} < {BIG_T_MIN_N}")
    if eps is None:
        try:
            eps = solve_epsilon_lower(phi, EpsilonCondition(gamma=gamma, eta=eta, T=T, side="lower",
                                                            cap=LOWER_EPS_CAP), tightest=tightest)
        except InfeasibleError as e:
            return BoundReport.infeasible("lower_risk_bigT", inputs, str(e), {"min_T": e.min_T})
    inputs["eps"] = eps
    if not (0 < eps and 128.0 * eps <= phi.value_at_zero):
        return BoundReport.infeasible("lower_risk_bigT", inputs,
                                      f"128*eps = {128 * eps:g} exceeds phi(0) = {phi.value_at_zero:g}")
    u = tail_inverse(phi, 128.0 * eps)
    event = 1.0 / (120.0 * math.e * n)
    conditional = beta / (1152.0 * gamma ** 2) * u * u
    return BoundReport("lower_risk_bigT", inputs, {"bound": event * conditional},
                       diagnostics={"event_probability_floor": event, "conditional_risk": conditional,
                                    "phi_inv_128eps": u,
                                    "proof_conditions_met": _big_t_conditions(phi, gamma, eta, T, n, eps)})


def lower_bound_smallT(phi: TailFunction, gamma: float, eta: float, T: int,
                       eps: Optional[float] = None) -> BoundReport:
    inputs = {"tail": phi.to_dict(), "gamma": gamma, "eta": eta, "T": int(T)}
    target = eta * gamma ** 2 * T
    if eps is None:
        cap = min(SMALL_T_EPS_CAP, phi.value_at_zero / 8.0)
        try:
            eps_a = solve_epsilon_lower(phi, EpsilonCondition(gamma=gamma, eta=eta, T=T, side="lower", cap=cap),
                                        tightest=True)
            eps_b = _smallest_feasible(lambda e: 36.0 * target * e >= tail_inverse(phi, 8.0 * e), cap)
        except InfeasibleError as e:
            return BoundReport.infeasible("lower_risk_smallT", inputs, str(e), {"min_T": e.min_T})
        eps = max(eps_a, eps_b)
    inputs["eps"] = eps
    if not (0 < eps and 8.0 * eps <= phi.value_at_zero):
        return BoundReport.infeasible("lower_risk_smallT", inputs,
                                      f"8*eps = {8 * eps:g} exceeds phi(0) = {phi.value_at_zero:g}")
    u = tail_inverse(phi, 8.0 * eps)
    return BoundReport("lower_risk_smallT", inputs, {"bound": u * u / (1152.0 * gamma ** 2 * T * eta)},
                       diagnostics={"phi_inv_8eps": u, "instance_p": u / (72.0 * target),
                                    "proof_conditions_met": _small_t_conditions(phi, gamma, eta, T, eps)})


def lower_risk_bound(phi: TailFunction, gamma: float, eta: float, T: int, n: int,
                     beta: Optional[float] = None, eps_big: Optional[float] = None,
                     eps_small: Optional[float] = None, tightest: bool = False) -> BoundReport:
    """max of the feasible branches; infeasible branches are kept in `branches`."""
    beta = phi.beta if beta is None else float(beta)
    big = lower_bound_bigT(phi, gamma, eta, T, n, beta, eps=eps_big, tightest=tightest)
    small = lower_bound_smallT(phi, gamma, eta, T, eps=eps_small)
    terms = {name: rep.value for name, rep in (("big_t", big), ("small_t", small)) if rep.feasible}
    inputs = {"tail": phi.to_dict(), "gamma": gamma, "eta": eta, "T": int(T), "n": int(n), "beta": beta}
    report = BoundReport("lower_risk", inputs, terms, combine="max", feasible=bool(terms),
                         reason="" if terms else "no branch is feasible",
                         branches={"big_t": big, "small_t": small})
    return report
