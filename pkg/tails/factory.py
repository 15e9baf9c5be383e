"""
Tail Function Factory

Builds tail functions from config specs of the form
{"family": "exponential"|"polynomial"|"stretched_exponential", "alpha": number, "beta": number}.
"""

from typing import Any, Dict

from . import TailFunction
from .families import ExponentialTail, PolynomialTail, StretchedExponentialTail


class TailFactory:
    """Factory for creating tail functions"""

    @staticmethod
    def create_tail(spec: Dict[str, Any]) -> TailFunction:
        """Create a tail function

        Args:
            spec: dict with 'family', plus 'alpha' for polynomial/stretched
                families; an optional 'beta' must not be below the family's
                own smoothness constant (it is only checked, never used to
                loosen the certificate)

        Returns:
            TailFunction instance
        """
        if not isinstance(spec, dict):
            raise ValueError(f"tail spec must be a mapping, got {type(spec).__name__}")
        family = spec.get("family")
        if family == "exponential":
            tail = ExponentialTail()
        elif family == "polynomial":
            tail = PolynomialTail(TailFactory._alpha(spec))
        elif family == "stretched_exponential":
            tail = StretchedExponentialTail(TailFactory._alpha(spec))
        else:
            raise ValueError(f"Unknown tail family: {family!r}. "
                             f"Valid families: {TailFactory.get_available_families()}")
        beta = spec.get("beta")
        if beta is not None and float(beta) < tail.beta * (1 - 1e-12):
            raise ValueError(f"beta={beta} is below the smoothness constant {tail.beta:.6g} of {tail.describe()}")
        return tail

    @staticmethod
    def _alpha(spec: Dict[str, Any]) -> float:
        if spec.get("alpha") is None:
            raise ValueError(f"tail family {spec.get('family')!r} needs 'alpha'")
        return float(spec["alpha"])

    @staticmethod
    def get_available_families():
        """Get list of available tail families"""
        return ["exponential", "polynomial", "stretched_exponential"]
