"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all errors raised by bgalois."""


class FieldMismatch(AlgebraError, TypeError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class NotSquare(AlgebraError, ValueError):
    pass


class Singular(AlgebraError, ValueError):
    pass


class NoRootInField(AlgebraError):
    """The polynomial has no root in the coefficient field."""

    def __init__(self, message: str, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


class FieldNotEnumerable(AlgebraError):
    pass


class WrongSize(AlgebraError, ValueError):
    pass


class NoInvertibleSolution(AlgebraError):
    pass


class NotAntiTriangular(AlgebraError, ValueError):
    pass


class ZeroEigenvalue(AlgebraError, ValueError):
    pass


class CharpolyDoesNotSplit(AlgebraError):
    pass


class NotReduced(AlgebraError):
    """A block could not be split further; ``residual`` holds it for inspection."""

    def __init__(self, message: str, residual=None, partial=None):
        super().__init__(message)
        self.residual = residual
        self.partial = partial


class CheckFailed(AlgebraError):
    """A path failed one of its three conditions.

    ``condition`` is 1, 2 or 3; ``evidence`` is a dict describing the failure and
    ``checks`` the full record of all three conditions.
    """

    def __init__(self, condition: int, evidence: dict, checks=None):
        super().__init__(f"condition ({condition}) failed: {evidence.get('reason', '')}")
        self.condition = condition
        self.evidence = evidence
        self.checks = checks


class DomainError(AlgebraError, ValueError):
    pass


class SizeTooSmall(AlgebraError, ValueError):
    pass


class BudgetExhausted(AlgebraError):
    """Step budget ran out; ``partial`` carries whatever was computed."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class DegreeOutOfRange(AlgebraError, ValueError):
    pass


class ParseError(AlgebraError, ValueError):
    pass
