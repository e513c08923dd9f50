"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class InfHeckeError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(InfHeckeError, ValueError):
    """Bad input: unknown generator, invalid parameter, malformed text."""


class PresentationMismatch(InfHeckeError, ValueError):
    pass


class TruncationError(InfHeckeError):
    """A computation would leave the finite window it is allowed to certify."""


class InvariantViolation(InfHeckeError, AssertionError):
    """An internal identity failed to hold. Must never fire on correct code."""
