"""Hard distributions behind the two lower-bound regimes.

Both use a witness w* (not unit norm) with w*·z_j = γ exactly on every support
point, and require γ ≤ 1/8 for the norm and margin arithmetic to hold.
"""

import math

import numpy as np

from tails import TailFunction
from tails.families import ExponentialTail
from tails.inverse import tail_inverse
from utils.constants import BIG_T_MIN_N, HARD_INSTANCE_MAX_GAMMA
from utils.errors import InfeasibleError

from . import DiscreteDistribution


def _check_gamma(gamma: float):
    if not (0 < gamma <= HARD_INSTANCE_MAX_GAMMA):
        raise ValueError(f"hard instances need 0 < gamma <= 1/8, got {gamma!r}")


def make_bigT_instance(gamma: float, n: int) -> DiscreteDistribution:
    """Three points; z3 is rare (probability 1/n) and usually missing from the sample."""
    _check_gamma(gamma)
    if int(n) != n or n < BIG_T_MIN_N:
        raise ValueError(f"big-T instance needs an integer n >= {BIG_T_MIN_N}, got {n!r}")
    n = int(n)
    rest = 1.0 - 1.0 / n
    support = np.array([[1.0, 0.0, 0.0],
                        [-0.5, 3.0 * gamma, 0.0],
                        [0.0, -0.125, 4.0 * gamma + 0.25]])
    probs = np.array([59.0 / 64.0 * rest, 5.0 / 64.0 * rest, 1.0 / n])
    return DiscreteDistribution(support=support, probs=probs, w_star=np.array([gamma, 0.5, 0.25]),
                                gamma=gamma, name="big_t", params={"n": n})


def smallT_probability(phi: TailFunction, gamma: float, eps: float, eta: float, T: int) -> float:
    """p = φ⁻¹(8ε)/(72γ²Tη)."""
    return tail_inverse(phi, 8.0 * eps) / (72.0 * gamma ** 2 * T * eta)


def make_smallT_instance(gamma: float, eps: float, eta: float, T: int,
                         phi: TailFunction = None) -> DiscreteDistribution:
    """Two points; z2 appears with probability p that shrinks like 1/T."""
    _check_gamma(gamma)
    phi = phi or ExponentialTail()
    if not (eps > 0 and 8.0 * eps <= phi.value_at_zero):
        raise ValueError(f"small-T instance needs 0 < 8*eps <= phi(0) = {phi.value_at_zero:g}, got eps={eps!r}")
    if not eta > 0 or int(T) != T or T < 1:
        raise ValueError(f"need eta > 0 and a positive integer T, got eta={eta!r}, T={T!r}")
    p = smallT_probability(phi, gamma, eps, eta, int(T))
    if not (0.0 < p < 1.0):
        u = tail_inverse(phi, 8.0 * eps)
        feasible = None if u == 0 else (math.floor(u / (72.0 * gamma ** 2 * eta)) + 1, None)
        raise InfeasibleError(f"small-T probability p = {p:.6g} is outside (0, 1); "
                              + ("no T is feasible at this eps" if feasible is None
                                 else f"need T >= {feasible[0]}"),
                              feasible_T=feasible)
    support = np.array([[1.0, 0.0], [-0.5, 3.0 * gamma]])
    return DiscreteDistribution(support=support, probs=np.array([1.0 - p, p]),
                                w_star=np.array([gamma, 0.5]), gamma=gamma, name="small_t",
                                params={"p": p, "eps": eps, "eta": eta, "T": int(T),
                                        "tail": phi.describe()})
