"""Exception types raised by weylcheck."""

from __future__ import annotations

from typing import Any


class WeylcheckError(Exception):
    """Base class for every error raised by the library."""


class InvalidRootSystem(WeylcheckError, ValueError):
    pass


class BudgetExceeded(WeylcheckError):
    """A computation would exceed a configured size budget."""

    def __init__(self, budget: str, requested: int, limit: int):
        self.budget = budget
        self.requested = requested
        self.limit = limit
        super().__init__(
            f"budget '{budget}' exceeded: requested {requested} > limit {limit}"
        )


class DegreeBudgetExceeded(BudgetExceeded):
    pass


class DegreesUnresolved(WeylcheckError):
    pass


class ExactDivisionFailed(WeylcheckError, ArithmeticError):
    pass


class UnsupportedParameter(WeylcheckError, ValueError):
    pass


class IncompleteTable(WeylcheckError):
    pass


class EquivarianceFailed(WeylcheckError):
    def __init__(self, generator: Any, basis_vector: Any):
        self.generator = generator
        self.basis_vector = basis_vector
        super().__init__(
            f"theta does not intertwine generator {generator} on basis vector {basis_vector}"
        )
