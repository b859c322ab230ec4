"""Exception types shared across the package."""

from __future__ import annotations


class PrecisionExhausted(ArithmeticError):
    """An interval computation could not decide its predicate at the given precision."""

    def __init__(self, message: str, prec: int | None = None):
        super().__init__(message)
        self.prec = prec


class InapplicableQuotient(ValueError):
    """The Rademacher-type formula's hypotheses fail for this eta-quotient."""

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""
