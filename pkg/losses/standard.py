"""Standard classification losses."""

from typing import Callable

import numpy as np
from scipy.special import expit

from . import LossFunction


class LogisticLoss(LossFunction):
    """ℓ(u) = log(1 + e^{−u}), β = 1/4; below e^{−u} on u ≥ 0."""

    kind = "logistic"

    def __init__(self):
        super().__init__(beta=0.25)

    def _eval(self, u):
        return np.logaddexp(0.0, -u)

    def _deriv(self, u):
        return -expit(-u)


class SquaredHingeLoss(LossFunction):
    """ℓ(u) = max(1 − u, 0)², β = 2. Zero for u ≥ 1, so not strictly decreasing."""

    kind = "squared_hinge"

    def __init__(self):
        super().__init__(beta=2.0)

    def _eval(self, u):
        m = np.maximum(1.0 - u, 0.0)
        return m * m

    def _deriv(self, u):
        return -2.0 * np.maximum(1.0 - u, 0.0)


class CustomLoss(LossFunction):
    kind = "custom"

    def __init__(self, eval_fn: Callable, deriv_fn: Callable, beta: float, name: str = "custom"):
        self._eval_fn = eval_fn
        self._deriv_fn = deriv_fn
        self.name = name
        super().__init__(beta=beta)

    def _eval(self, u):
        return np.asarray(self._eval_fn(u), dtype=float)

    def _deriv(self, u):
        return np.asarray(self._deriv_fn(u), dtype=float)

    def describe(self) -> str:
        return f"custom({self.name})"


def make_logistic() -> LossFunction:
    return LogisticLoss()


def make_squared_hinge() -> LossFunction:
    return SquaredHingeLoss()


def make_hinge() -> LossFunction:
    """max(0, 1 − u): convex and decreasing but not differentiable at 1."""
    return CustomLoss(lambda u: np.maximum(0.0, 1.0 - u),
                      lambda u: np.where(u < 1.0, -1.0, 0.0),
                      beta=1.0, name="hinge")
