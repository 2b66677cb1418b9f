"""Exception types raised across the package."""

from __future__ import annotations


class RootFindingError(Exception):
    """Base class for every failure raised by ftaroots."""


class DegreeZero(RootFindingError, ValueError):
    pass


class NotMonic(RootFindingError, ValueError):
    pass


class NoSignificantDerivative(RootFindingError):
    pass


class StartExhausted(RootFindingError):
    pass


class TargetCritical(RootFindingError):
    """0 is (numerically) a critical value; the multiple-root branch applies."""


class PlanExhausted(RootFindingError):
    pass


class NewtonStalled(RootFindingError):
    pass


class DerivativeVanished(RootFindingError):
    pass


class StepUnderflow(RootFindingError):
    pass


class SolveFailed(RootFindingError):
    pass


class OracleDiverged(RootFindingError):
    pass


class SizeMismatch(RootFindingError, ValueError):
    pass
