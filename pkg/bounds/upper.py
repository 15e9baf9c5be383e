"""Upper risk bound for GD and the uniform-convergence (Rademacher) gap bound.

All logarithms are natural.
"""

import math
from typing import Optional

from tails import TailFunction
from tails.epsilon import EpsilonCondition, solve_epsilon_upper
from tails.inverse import condition_value, tail_inverse
from utils.constants import DEFAULT_K

from .report import BoundReport


def _check_common(n, delta, K):
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (0 < delta < 1):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    if not K > 0:
        raise ValueError(f"K must be positive, got {K!r}")


def rademacher_gap_bound(emp_risk: float, b: float, beta: float, radius: float, n: int, delta: float,
                         K: float = DEFAULT_K) -> float:
    """emp + K(√emp·(√β log^1.5(n)·R + √(b log(1/δ)/n)) + β log³(n)·R² + b log(1/δ)/n), R = radius/√n."""
    for name, v in (("emp_risk", emp_risk), ("b", b), ("beta", beta), ("radius", radius)):
        if not (v >= 0 and math.isfinite(v)):
            raise ValueError(f"{name} must be finite and nonnegative, got {v!r}")
    _check_common(n, delta, K)
    log_n = math.log(n)
    rad = radius / math.sqrt(n)
    conf = b * math.log(1.0 / delta) / n
    inner = (math.sqrt(emp_risk) * (math.sqrt(beta) * log_n ** 1.5 * rad + math.sqrt(conf))
             + beta * log_n ** 3 * rad ** 2 + conf)
    return emp_risk + K * inner


def upper_risk_bound(phi: TailFunction, gamma: float, eta: float, T: int, n: int, delta: float,
                     K: float = DEFAULT_K, beta: Optional[float] = None,
                     eps: Optional[float] = None) -> BoundReport:
    """Three-term bound on L(w_T) at the largest admissible ε.

    beta defaults to the tail's smoothness constant; pass the loss's β when
    it differs. A given eps pins ε; the report is then infeasible unless
    ηγ²T ≤ (φ⁻¹(ε))²/ε holds at it.
    """
    _check_common(n, delta, K)
    beta = phi.beta if beta is None else float(beta)
    cond = EpsilonCondition(gamma=gamma, eta=eta, T=T, side="upper")
    reason = ""
    if eps is None:
        eps = solve_epsilon_upper(phi, cond)
    else:
        if not (0 < eps <= min(cond.cap, phi.value_at_zero)):
            raise ValueError(f"eps must lie in (0, {min(cond.cap, phi.value_at_zero):g}], got {eps!r}")
        g = condition_value(phi, eps)
        if cond.target > g * (1.0 + 1e-12):
            reason = f"eta*gamma^2*T = {cond.target:g} exceeds g(eps) = {g:g}"
    u = tail_inverse(phi, eps)
    log_n = math.log(n)
    log_d = math.log(1.0 / delta)
    scale = K * u * u / gamma ** 2
    terms = {
        "optimization": 4.0 * scale / (eta * T),
        "generalization": 32.0 * beta * scale * (log_n ** 3 + 4.0 * log_d) / n,
        "cross": 4.0 * scale * log_d / (eta * T * n),
    }
    r_eps = 4.0 * u / gamma
    b = r_eps ** 2 / (8.0 * eta * T) + 4.0 * beta * r_eps ** 2
    chain = rademacher_gap_bound(3.0 * r_eps ** 2 / (16.0 * eta * T), b, beta, r_eps, n, delta, K)
    inputs = {"tail": phi.to_dict(), "gamma": gamma, "eta": eta, "T": int(T), "n": int(n), "delta": delta,
              "K": K, "beta": beta}
    return BoundReport("upper_risk", inputs, terms, feasible=not reason, reason=reason,
                       diagnostics={"eps": eps, "phi_inv_eps": u, "r_eps": r_eps, "b": b,
                                    "rademacher_chain": chain})
