"""Built-in tail families and the callable wrapper.

Every built-in satisfies the tail axioms exactly: φ(0) = 1, φ'(0) = −1, convex,
1-Lipschitz, β-smooth with the stated β.
"""

import math
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import TailFunction


class ExponentialTail(TailFunction):
    """φ(u) = e^{−u}, β = 1."""

    family_tag = "exponential"

    def __init__(self):
        super().__init__(beta=1.0)

    def _eval(self, u):
        return np.exp(-u)

    def _deriv(self, u):
        return -np.exp(-u)

    def inverse_exact(self, eps: float) -> Optional[float]:
        return -math.log(eps)


class PolynomialTail(TailFunction):
    """φ(u) = (1 + u/α)^{−α}, β = (α+1)/α; decays like u^{−α}."""

    family_tag = "polynomial"

    def __init__(self, alpha: float):
        if not alpha > 0:
            raise ValueError(f"polynomial tail needs alpha > 0, got {alpha}")
        self.alpha = float(alpha)
        super().__init__(beta=(self.alpha + 1.0) / self.alpha, params={"alpha": self.alpha})

    def _eval(self, u):
        return np.power(1.0 + u / self.alpha, -self.alpha)

    def _deriv(self, u):
        return -np.power(1.0 + u / self.alpha, -self.alpha - 1.0)

    def inverse_exact(self, eps: float) -> Optional[float]:
        return self.alpha * (eps ** (-1.0 / self.alpha) - 1.0)


class StretchedExponentialTail(TailFunction):
    """φ(u) = exp(c^α − (κu + c)^α); decays like e^{−Θ(u^α)}.

    c = ((α−1)/α)^{1/α} puts the inflection point at u = 0 (convex on [0, ∞));
    κ = 1/(α c^{α−1}) makes φ'(0) = −1, and |φ'| decreases from there.
    For α ≤ 1 the map is convex everywhere and c = 1.
    β = sup φ'' is computed numerically.
    """

    family_tag = "stretched_exponential"

    def __init__(self, alpha: float):
        if not alpha > 0:
            raise ValueError(f"stretched exponential tail needs alpha > 0, got {alpha}")
        self.alpha = float(alpha)
        if self.alpha > 1.0:
            self.shift = ((self.alpha - 1.0) / self.alpha) ** (1.0 / self.alpha)
        else:
            self.shift = 1.0
        self.scale = 1.0 / (self.alpha * self.shift ** (self.alpha - 1.0))
        self._c_pow = self.shift ** self.alpha
        beta = self._sup_second_derivative() * (1.0 + 1e-9)
        super().__init__(beta=beta, params={"alpha": self.alpha})

    def _s(self, u):
        return self.scale * u + self.shift

    def _eval(self, u):
        return np.exp(self._c_pow - np.power(self._s(u), self.alpha))

    def _deriv(self, u):
        s = self._s(u)
        return -self.scale * self.alpha * np.power(s, self.alpha - 1.0) * self._eval(u)

    def _second(self, u):
        a = self.alpha
        s = self._s(u)
        return (self.scale ** 2) * a * np.power(s, a - 2.0) * (a * np.power(s, a) - (a - 1.0)) * self._eval(u)

    def _sup_second_derivative(self) -> float:
        u_hi = self.inverse_exact(1e-12)
        grid = np.linspace(0.0, u_hi, 4001)
        vals = self._second(grid)
        i = int(np.argmax(vals))
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, len(grid) - 1)]
        best = float(vals[i])
        if hi > lo:
            res = minimize_scalar(lambda x: -float(self._second(np.asarray(x))),
                                  bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-12})
            best = max(best, -float(res.fun))
        return best

    def inverse_exact(self, eps: float) -> Optional[float]:
        return ((self._c_pow - math.log(eps)) ** (1.0 / self.alpha) - self.shift) / self.scale


class CustomTail(TailFunction):
    """Tail given by callables; no axiom is assumed, check_tail_axioms decides."""

    family_tag = "custom"

    def __init__(self, eval_fn: Callable[[np.ndarray], np.ndarray],
                 deriv_fn: Callable[[np.ndarray], np.ndarray],
                 beta: float, name: str = "custom"):
        self._eval_fn = eval_fn
        self._deriv_fn = deriv_fn
        self.name = name
        super().__init__(beta=beta, params={"name": name})

    def _eval(self, u):
        return np.asarray(self._eval_fn(u), dtype=float)

    def _deriv(self, u):
        return np.asarray(self._deriv_fn(u), dtype=float)

    def describe(self) -> str:
        return f"custom({self.name})"
