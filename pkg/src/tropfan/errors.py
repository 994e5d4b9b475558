"""Exception hierarchy.

Everything raised on purpose by the library derives from
:class:`TropfanError`. Precondition failures derive from
:class:`PreconditionViolated` so that callers (and the CLI) can treat them
uniformly.
"""


class TropfanError(Exception):
    """Base class for all library errors."""


class DegenerateInput(TropfanError, ValueError):
    """Point set is empty, collinear, or otherwise not 2-dimensional."""


class InvalidSubdivision(TropfanError, ValueError):
    """A collection of cells violates the subdivision axioms."""


class PreconditionViolated(TropfanError):
    """An operation was called on an object outside its domain.

    The message names the failed condition.
    """


class BaseMismatch(PreconditionViolated):
    pass


class NotParallelogram(PreconditionViolated):
    pass


class UnderMarkedCell(PreconditionViolated):
    pass


class DimensionMismatch(PreconditionViolated):
    pass


class EdgeNotInSubdivision(PreconditionViolated):
    pass


class NotComplementary(PreconditionViolated):
    pass


class NotNodal(PreconditionViolated):
    pass


class NotSimple(PreconditionViolated):
    pass


class EmptyCone(TropfanError):
    """The constraint system has no relative-interior point compatible with
    the constant lineality."""


class BudgetExceeded(TropfanError):
    """Enumeration would exceed the configured size limits."""
