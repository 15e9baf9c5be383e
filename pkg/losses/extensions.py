"""Losses that equal a tail function on u ≥ 0 and extend it to u < 0.

quadratic: φ(0) + φ'(0)u + (β/2)u²  (large-T hard instance)
linear:    φ(0) + φ'(0)u            (small-T hard instance, 1-Lipschitz)
Both are members of C_{φ,β} for any tail function φ.
"""

import numpy as np

from tails import TailFunction
from tails.axioms import check_tail_axioms
from utils.errors import AxiomError

from . import LossFunction


class ExtensionLoss(LossFunction):

    def __init__(self, phi: TailFunction, quadratic: bool):
        self.quadratic = bool(quadratic)
        self.kind = "quadratic_extension" if quadratic else "linear_extension"
        self._phi0 = phi.value_at_zero
        self._dphi0 = phi.slope_at_zero
        super().__init__(beta=phi.beta, source_tail=phi)

    def _eval(self, u):
        phi = self._source_tail
        pos = np.asarray(phi.eval(np.maximum(u, 0.0)), dtype=float)
        neg = self._phi0 + self._dphi0 * u
        if self.quadratic:
            neg = neg + 0.5 * self._beta * u * u
        return np.where(u >= 0, pos, neg)

    def _deriv(self, u):
        phi = self._source_tail
        pos = np.asarray(phi.deriv(np.maximum(u, 0.0)), dtype=float)
        neg = self._dphi0 + (self._beta * u if self.quadratic else 0.0 * u)
        return np.where(u >= 0, pos, neg)


def _require_tail(phi: TailFunction):
    report = check_tail_axioms(phi)
    if not report.passed:
        raise AxiomError(f"{phi.describe()} is not a tail function: failed {', '.join(report.failures())}")


def make_quadratic_extension(phi: TailFunction) -> LossFunction:
    _require_tail(phi)
    return ExtensionLoss(phi, quadratic=True)


def make_linear_extension(phi: TailFunction) -> LossFunction:
    _require_tail(phi)
    return ExtensionLoss(phi, quadratic=False)
