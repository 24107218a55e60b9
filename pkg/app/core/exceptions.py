"""
Error hierarchy shared by the library, the CLI and the HTTP layer.
"""


class CvError(Exception):
    """Base class for every toolkit error."""


class InvalidArgumentError(CvError, ValueError):
    """An argument is outside the documented domain of an operation."""


class NumericalDegeneracyError(CvError, ArithmeticError):
    """A covariance matrix is too close to singular for the requested evaluation."""


class PreconditionViolationError(CvError, ValueError):
    """The input is well-formed but violates an operation's precondition."""


class StateFormatError(InvalidArgumentError):
    """A serialized state could not be read or failed validation."""
