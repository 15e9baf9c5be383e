"""Exception types raised across packages."""

from typing import Optional


class ConfigError(ValueError):
    """Malformed or missing configuration; `field_path` is a dotted path."""

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}" if field_path else message)


class AxiomError(ValueError):
    """A tail or loss failed the certificate its caller requires."""


class InfeasibleError(ValueError):
    """An epsilon condition or instance parameter set admits no solution."""

    def __init__(self, message: str, min_T: Optional[int] = None,
                 feasible_T: Optional[tuple] = None):
        self.min_T = min_T
        self.feasible_T = feasible_T
        super().__init__(message)


class NumericalError(RuntimeError):
    """Bracketing or bisection did not converge."""
