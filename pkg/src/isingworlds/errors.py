"""Exception types shared across the package."""


class IsingError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(IsingError, ValueError):
    """A coupling, probability, or seed parameter is outside its legal range."""


class GraphFormatError(IsingError, ValueError):
    """A graph file or payload could not be parsed."""


class UnsupportedFieldError(IsingError, ValueError):
    """The magnetic field mixes signs; only sign-uniform fields reduce away."""


class InvalidConfigError(IsingError, ValueError):
    """A configuration is malformed or has zero weight for the requested operation."""


class CapExceededError(IsingError):
    """The graph is too large for exhaustive enumeration."""


class NoCoalescenceError(IsingError):
    """Coupled chains failed to coalesce within the allowed epoch budget."""


class UnknownStatisticError(IsingError, ValueError):
    """A chain statistic name is not defined for the state's world."""
