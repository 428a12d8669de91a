"""Exception types shared across the package."""


class DessinError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(DessinError):
    """A computation would grow past a configured size limit."""


class DegreeCapExceeded(CapExceeded):
    pass


class TimeBudgetExceeded(CapExceeded):
    pass


class ParseError(DessinError, ValueError):
    pass


class ValidationError(DessinError, ValueError):
    pass


class UnsupportedFamily(DessinError):
    pass


class NotApplicable(DessinError):
    pass


class NegativeResult(DessinError):
    """A count that must be non-negative came out negative (corrupt lattice data)."""


class InternalCheckFailed(DessinError, AssertionError):
    """A hard internal consistency check failed."""
