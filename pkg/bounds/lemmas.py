"""Reference point w*_ε and the deterministic / SGD lemma bounds."""

import math

import numpy as np

from tails import TailFunction
from tails.inverse import tail_inverse
from utils.constants import NORM_ATOL

from .report import BoundReport


def _nonneg(**values):
    for name, v in values.items():
        if not (v >= 0 and math.isfinite(v)):
            raise ValueError(f"{name} must be finite and nonnegative, got {v!r}")


def _steps(T):
    if int(T) != T or T < 1:
        raise ValueError(f"T must be a positive integer, got {T!r}")


def reference_point(phi: TailFunction, gamma: float, eps: float, w_star) -> np.ndarray:
    """w*_ε = (φ⁻¹(ε)/γ)·w* for a unit witness w*."""
    w_star = np.asarray(w_star, dtype=float)
    if abs(float(np.linalg.norm(w_star)) - 1.0) > NORM_ATOL * 10:
        raise ValueError(f"w_star must be a unit vector, got norm {np.linalg.norm(w_star):.12g}")
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    return (tail_inverse(phi, eps) / gamma) * w_star


def norm_bound(wstar_eps_norm: float, eta: float, eps: float, T: int) -> float:
    """2‖w*_ε‖ + 2√(ηεT)."""
    _nonneg(wstar_eps_norm=wstar_eps_norm, eta=eta, eps=eps)
    _steps(T)
    return 2.0 * wstar_eps_norm + 2.0 * math.sqrt(eta * eps * T)


def opt_error_bound(wstar_eps_norm: float, eta: float, eps: float, T: int) -> float:
    """‖w*_ε‖²/(ηT) + 2ε."""
    _nonneg(wstar_eps_norm=wstar_eps_norm, eps=eps)
    _steps(T)
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta!r}")
    return wstar_eps_norm ** 2 / (eta * T) + 2.0 * eps


def _sgd_b(wstar_eps_norm, eta, eps, T, beta):
    return 3.0 * eps + 16.0 * beta * wstar_eps_norm ** 2 + 16.0 * eta * eps * T


def sgd_empirical_bound(wstar_eps_norm: float, eta: float, eps: float, T: int, beta: float,
                        delta: float) -> float:
    """‖w*_ε‖²/(ηT) + 3ε + 8(3ε + 16β‖w*_ε‖² + 16ηεT)·log(1/δ)/T; holds w.p. ≥ 1 − δ."""
    return sgd_empirical_report(wstar_eps_norm, eta, eps, T, beta, delta).value


def sgd_regret_bound(w_norm: float, eta: float, T: int) -> float:
    """‖w‖²/(2ηT)."""
    _nonneg(w_norm=w_norm)
    _steps(T)
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta!r}")
    return w_norm ** 2 / (2.0 * eta * T)


def sgd_regret_delivered_bound(w_norm: float, eta: float, T: int) -> float:
    """‖w‖²/(ηT), the right side of (1/T)Σℓ(w_t·z) − (2/T)Σℓ(w·z) ≤ ‖w‖²/(ηT)."""
    return 2.0 * sgd_regret_bound(w_norm, eta, T)


def norm_report(wstar_eps_norm, eta, eps, T) -> BoundReport:
    norm_bound(wstar_eps_norm, eta, eps, T)
    return BoundReport("norm", {"wstar_eps_norm": wstar_eps_norm, "eta": eta, "eps": eps, "T": T},
                       {"reference": 2.0 * wstar_eps_norm, "growth": 2.0 * math.sqrt(eta * eps * T)})


def opt_error_report(wstar_eps_norm, eta, eps, T) -> BoundReport:
    opt_error_bound(wstar_eps_norm, eta, eps, T)
    return BoundReport("opt_error", {"wstar_eps_norm": wstar_eps_norm, "eta": eta, "eps": eps, "T": T},
                       {"distance": wstar_eps_norm ** 2 / (eta * T), "approximation": 2.0 * eps})


def sgd_empirical_report(wstar_eps_norm, eta, eps, T, beta, delta) -> BoundReport:
    _nonneg(wstar_eps_norm=wstar_eps_norm, eps=eps, beta=beta)
    _steps(T)
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta!r}")
    if not (0 < delta <= 1):
        raise ValueError(f"delta must lie in (0, 1], got {delta!r}")
    b = _sgd_b(wstar_eps_norm, eta, eps, T, beta)
    return BoundReport("sgd_empirical",
                       {"wstar_eps_norm": wstar_eps_norm, "eta": eta, "eps": eps, "T": T, "beta": beta,
                        "delta": delta},
                       {"distance": wstar_eps_norm ** 2 / (eta * T), "approximation": 3.0 * eps,
                        "concentration": 8.0 * b * math.log(1.0 / delta) / T},
                       diagnostics={"b": b})
