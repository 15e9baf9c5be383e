"""
Tail functions

Decay-rate descriptors φ: [0, ∞) → [0, ∞) that grade how fast a loss vanishes:
- exponential, polynomial(α), stretched exponential(α) built-ins (families.py)
- user-supplied callables (CustomTail)
Inversion and epsilon conditions live in inverse.py / epsilon.py, grid
certificates in axioms.py, construction from config in factory.py.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


class TailFunction(ABC):
    """Base class for tail functions.

    Values are immutable after construction; eval/deriv accept scalars or
    arrays of nonnegative reals and return the same shape.
    """

    family_tag: str = "custom"

    def __init__(self, beta: float, params: Optional[Dict[str, Any]] = None):
        if not (beta > 0 and np.isfinite(beta)):
            raise ValueError(f"beta must be positive and finite, got {beta}")
        self._beta = float(beta)
        self._params = dict(params or {})

    @property
    def beta(self) -> float:
        return self._beta

    @property
    def params(self) -> Dict[str, Any]:
        return dict(self._params)

    @abstractmethod
    def _eval(self, u: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _deriv(self, u: np.ndarray) -> np.ndarray:
        pass

    @staticmethod
    def _as_domain(u: ArrayLike) -> np.ndarray:
        arr = np.asarray(u, dtype=float)
        if np.any(np.isnan(arr)) or np.any(arr < 0):
            raise ValueError("tail functions are defined on u >= 0 only")
        return arr

    def eval(self, u: ArrayLike) -> ArrayLike:
        arr = self._as_domain(u)
        out = self._eval(arr)
        return float(out) if arr.ndim == 0 else out

    def deriv(self, u: ArrayLike) -> ArrayLike:
        arr = self._as_domain(u)
        out = self._deriv(arr)
        return float(out) if arr.ndim == 0 else out

    @property
    def value_at_zero(self) -> float:
        return float(self._eval(np.asarray(0.0)))

    @property
    def slope_at_zero(self) -> float:
        return float(self._deriv(np.asarray(0.0)))

    def inverse_exact(self, eps: float) -> Optional[float]:
        """Closed-form φ⁻¹(eps) when the family has one, else None."""
        return None

    def describe(self) -> str:
        if "alpha" in self._params:
            return f"{self.family_tag}(alpha={self._params['alpha']:g})"
        return self.family_tag

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family_tag, "beta": self._beta, **self._params}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.describe()}, beta={self._beta:.6g})"
