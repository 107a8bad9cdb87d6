"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class HalgError(Exception):
    """Base class for all errors raised by this package."""


class DocSyntaxError(HalgError):
    """Input text is not a JSON document of the expected top-level shape."""


class ShapeError(HalgError):
    """A structural invariant is violated; `path` points at the offender."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class DimensionMismatch(HalgError):
    """Operands have incompatible dimensions."""


class FieldMismatch(HalgError):
    """Operands live over different fields."""


class SingularMapError(HalgError):
    """Inversion was requested for a map without an inverse."""


class UnknownConditionError(HalgError):
    """A side-condition tag is not one of the supported names."""


class KindMismatch(HalgError):
    """Two documents were expected to share a structure kind."""


class ParamError(HalgError):
    """A construction or CLI parameter is missing or malformed."""


class PreconditionFailed(HalgError):
    """A construction's input fails its declared precondition.

    `report` carries the failing CheckReport when the precondition is a
    checkable identity (None for plain predicate failures).
    """

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class TheoremCheckError(HalgError):
    """A construction's output failed the check its theorem guarantees.

    Reaching this means either an implementation bug or an input outside the
    theorem's hypotheses that the preconditions failed to screen; it is never
    silenced.
    """

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class NonzeroWeightError(HalgError):
    """A weight-0-only construction was fed a nonzero weight family."""


class MissingCoefficientError(HalgError):
    """A coefficient family does not cover every label of the index set."""


class BudgetExceededError(HalgError):
    """An enumeration request exceeds the configured candidate budget."""


class PowerBoundError(HalgError):
    """A derived-structure level exceeds the configured power bound."""


class NonFiniteFieldError(HalgError):
    """Search requires a prime field; the rationals are not enumerable."""


class UnknownFixtureError(HalgError):
    """No catalog fixture has the requested name."""
