"""
Bound evaluators

Closed-form risk bounds with explicit constants, each returned as a
BoundReport that echoes its inputs and itemizes its terms:
- lemmas.py: reference point, norm, optimization error, SGD bounds
- upper.py: upper risk bound and the Rademacher gap bound
- lower.py: big-T / small-T lower bounds and their combination
- rates.py: rate expressions and their log-log slopes
"""

from .report import BoundReport

__all__ = ["BoundReport"]
