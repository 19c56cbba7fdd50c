"""Exception hierarchy shared by all heiskod modules."""


class HeiskodError(Exception):
    """Base class for all package errors."""


class PreconditionError(HeiskodError, ValueError):
    """A user-supplied parameter violates a documented precondition.

    The CLI maps this to exit code 2 (usage error).
    """


class UnsupportedModelError(PreconditionError):
    """The pair model was requested where only the matrix model exists (p = 2)."""


class InconsistencyError(HeiskodError):
    """An internal cross-check failed (e.g. a closed form disagreed with a
    direct computation, or an invariant came out non-integral).

    This signals either an invalid parameter combination or a genuine bug;
    the CLI maps it to exit code 1.
    """


class EnumerationBoundError(HeiskodError):
    """An exhaustive enumeration would exceed the configured element bound."""
