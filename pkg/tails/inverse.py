"""Numerical inverse of a strictly decreasing tail function."""

import math

import numpy as np
from scipy.optimize import bisect

from utils.constants import BRACKET_MAX_DOUBLINGS, BRACKET_START, MAX_BISECTION_STEPS, TOL_INV
from utils.errors import NumericalError

from . import TailFunction

_RTOL = 4 * np.finfo(float).eps


def tail_inverse(phi: TailFunction, eps: float, tol: float = TOL_INV) -> float:
    """u ≥ 0 with φ(u) = eps, by bracket doubling from u = 1 then bisection.

    Raises ValueError for eps outside (0, φ(0)] and NumericalError when no
    bracket is found or the residual exceeds tol·eps.
    """
    eps = float(eps)
    top = phi.value_at_zero
    if not (eps > 0 and eps <= top and math.isfinite(eps)):
        raise ValueError(f"tail_inverse needs 0 < eps <= phi(0) = {top:.6g}, got {eps!r}")
    if eps == top:
        return 0.0

    def gap(u: float) -> float:
        return phi.eval(u) - eps

    lo, hi = 0.0, BRACKET_START
    for _ in range(BRACKET_MAX_DOUBLINGS):
        g_hi = gap(hi)
        if g_hi <= 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NumericalError(f"no bracket for phi^-1({eps:g}) after {BRACKET_MAX_DOUBLINGS} doublings")
    if g_hi == 0:
        return hi
    if gap(lo) == 0:
        return lo

    try:
        u = bisect(gap, lo, hi, xtol=1e-300, rtol=_RTOL, maxiter=MAX_BISECTION_STEPS)
    except RuntimeError as e:
        raise NumericalError(f"bisection for phi^-1({eps:g}) failed: {e}") from e

    # float resolution of φ near u bounds what any inverse can achieve
    resolution = abs(phi.deriv(u)) * np.spacing(max(u, np.finfo(float).tiny)) * 4 + np.spacing(eps) * 4
    if abs(phi.eval(u) - eps) > tol * eps + resolution:
        raise NumericalError(f"phi^-1({eps:g}) residual {abs(phi.eval(u) - eps):.3e} exceeds tolerance")
    return float(u)


def condition_value(phi: TailFunction, eps: float) -> float:
    """(φ⁻¹(ε))²/ε, strictly decreasing on (0, φ(0)]."""
    u = tail_inverse(phi, eps)
    with np.errstate(over="ignore"):
        return float(np.float64(u) * np.float64(u) / np.float64(eps))
