"""
Loss functions

Scalar losses ℓ: R → R+ evaluated at margins u = w·z:
- extensions of a tail function (quadratic / linear splice at u = 0)
- standard losses (logistic, squared hinge) and a non-smooth hinge control
Class-membership certificates live in membership.py, config construction in factory.py.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


class LossFunction(ABC):
    """Base class for losses; immutable, vectorised over margins."""

    kind: str = "custom"

    def __init__(self, beta: float, source_tail=None):
        if not (beta > 0 and np.isfinite(beta)):
            raise ValueError(f"beta must be positive and finite, got {beta}")
        self._beta = float(beta)
        self._source_tail = source_tail

    @property
    def beta(self) -> float:
        return self._beta

    @property
    def source_tail(self):
        return self._source_tail

    @abstractmethod
    def _eval(self, u: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _deriv(self, u: np.ndarray) -> np.ndarray:
        pass

    def eval(self, u: ArrayLike) -> ArrayLike:
        arr = np.asarray(u, dtype=float)
        out = self._eval(arr)
        return float(out) if arr.ndim == 0 else out

    def deriv(self, u: ArrayLike) -> ArrayLike:
        arr = np.asarray(u, dtype=float)
        out = self._deriv(arr)
        return float(out) if arr.ndim == 0 else out

    def grad_bound_gap(self, u: ArrayLike) -> ArrayLike:
        """ℓ'(u)² − 2βℓ(u); nonpositive for nonnegative β-smooth losses."""
        d = self.deriv(u)
        return d * d - 2.0 * self._beta * self.eval(u)

    def max_step(self) -> float:
        """Largest admissible step size 1/(2β)."""
        return 1.0 / (2.0 * self._beta)

    def describe(self) -> str:
        if self._source_tail is not None:
            return f"{self.kind}[{self._source_tail.describe()}]"
        return self.kind

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind, "beta": self._beta}
        if self._source_tail is not None:
            out["tail"] = self._source_tail.to_dict()
        return out

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.describe()}, beta={self._beta:.6g})"
