"""Rate expressions of the upper bound per tail family, and their log-log slopes.

exponential:      log²T/(γ²T) + log²T/(γ²n)
polynomial(α):    γ^{−2α/(2+α)}·(T^{−α/(2+α)} + T^{2/(2+α)}/n)
stretched(α):     log^{2/α}T/(γ²T) + log^{2/α}T/(γ²n)
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

FAMILIES = ("exponential", "polynomial", "stretched_exponential")


@dataclass(frozen=True)
class RateEntry:
    family: str
    alpha: Optional[float]
    gamma: float
    T: float
    n: float
    expression: str
    t_term: float
    n_term: float
    # d log(rate)/d log T and d log(rate)/d log n of the full expression
    slope_T: float
    slope_n: float
    # T ≪ n: slope of the T-term; T ≫ n: n-slope of the n-term; T-slope of the n-term
    slope_T_small_T: float
    slope_n_large_T: float
    slope_T_of_n_term: float
    asymptotic_T_exponent: float

    @property
    def value(self) -> float:
        return self.t_term + self.n_term

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["value"] = self.value
        return out


def rate_table(family: str, alpha: Optional[float], gamma: float, T: float, n: float) -> RateEntry:
    if family not in FAMILIES:
        raise ValueError(f"Unknown tail family: {family!r}. Valid families: {list(FAMILIES)}")
    if family != "exponential" and not (alpha is not None and alpha > 0):
        raise ValueError(f"family {family!r} needs alpha > 0")
    if not (gamma > 0 and T > 1 and n > 0):
        raise ValueError(f"need gamma > 0, T > 1 and n > 0, got gamma={gamma!r}, T={T!r}, n={n!r}")
    log_T = math.log(T)
    if family == "polynomial":
        a = float(alpha)
        pref = (1.0 / gamma) ** (2.0 * a / (2.0 + a))
        t_term = pref * T ** (-a / (2.0 + a))
        n_term = pref * T ** (2.0 / (2.0 + a)) / n
        s_t, s_nt = -a / (2.0 + a), 2.0 / (2.0 + a)
        expression = f"(1/g)^(2a/(2+a)) * (T^(-a/(2+a)) + T^(2/(2+a))/n), a={a:g}"
        asymptotic = -a / (2.0 + a)
    else:
        power = 2.0 if family == "exponential" else 2.0 / float(alpha)
        t_term = log_T ** power / (gamma ** 2 * T)
        n_term = log_T ** power / (gamma ** 2 * n)
        s_t, s_nt = -1.0 + power / log_T, power / log_T
        expression = (f"log^{power:g}(T)/(g^2 T) + log^{power:g}(T)/(g^2 n)")
        asymptotic = -1.0
    total = t_term + n_term
    return RateEntry(family=family, alpha=None if family == "exponential" else float(alpha), gamma=gamma,
                     T=T, n=n, expression=expression, t_term=t_term, n_term=n_term,
                     slope_T=(t_term * s_t + n_term * s_nt) / total, slope_n=-n_term / total,
                     slope_T_small_T=s_t, slope_n_large_T=-1.0, slope_T_of_n_term=s_nt,
                     asymptotic_T_exponent=asymptotic)
