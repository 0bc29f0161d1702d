"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CopolyError(Exception):
    """Base class for all library errors."""


class NotInvertible(CopolyError, ArithmeticError):
    pass


class NotDivisible(CopolyError, ArithmeticError):
    pass


class DivisibilityFailure(NotDivisible):
    """An exact division failed while building a lazily divided series.

    ``k`` is the index of the series coefficient and ``alpha`` the moment
    at which the division first failed.
    """

    def __init__(self, k: int, alpha: tuple[int, ...], value=None, divisor=None):
        self.k = k
        self.alpha = tuple(alpha)
        self.value = value
        self.divisor = divisor
        msg = f"coefficient u_{k} has no moment at alpha={list(self.alpha)} in this ring"
        if divisor is not None:
            msg += f" ({divisor} does not divide {value})"
        super().__init__(msg)


class OrderViolation(CopolyError, ValueError):
    pass


class HypothesisViolation(CopolyError):
    pass


class RingCapability(CopolyError):
    pass


class TruncationTooLow(CopolyError):
    pass


class TruncationMismatch(CopolyError, ValueError):
    pass


class NoTerminationWitness(CopolyError):
    pass


class SolutionCheckFailed(CopolyError):
    pass


class ParseError(CopolyError, ValueError):
    pass
