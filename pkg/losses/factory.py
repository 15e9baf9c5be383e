"""
Loss Factory

Builds a loss from its config kind and the configured tail function.
"""

from typing import Optional

from tails import TailFunction

from . import LossFunction
from .extensions import make_linear_extension, make_quadratic_extension
from .standard import make_hinge, make_logistic, make_squared_hinge


class LossFactory:
    """Factory for creating losses"""

    @staticmethod
    def create_loss(kind: str, phi: Optional[TailFunction] = None) -> LossFunction:
        """Create a loss

        Args:
            kind: loss kind ('quadratic_extension', 'linear_extension',
                'logistic', 'squared_hinge', 'hinge')
            phi: tail function; required by the extension kinds

        Returns:
            LossFunction instance
        """
        if kind in ("quadratic_extension", "linear_extension"):
            if phi is None:
                raise ValueError(f"loss {kind!r} needs a tail function")
            if kind == "quadratic_extension":
                return make_quadratic_extension(phi)
            return make_linear_extension(phi)
        if kind == "logistic":
            return make_logistic()
        if kind == "squared_hinge":
            return make_squared_hinge()
        if kind == "hinge":
            return make_hinge()
        raise ValueError(f"Unknown loss kind: {kind!r}. "
                         f"Valid kinds: {LossFactory.get_available_losses()}")

    @staticmethod
    def get_available_losses():
        """Get list of available loss kinds"""
        return ["quadratic_extension", "linear_extension", "logistic", "squared_hinge", "hinge"]
