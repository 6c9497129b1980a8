"""Custom exceptions for the holonomy engine"""


class HQCException(Exception):
    """Base exception for optical HQC computations"""

    exit_code = 1


class InvalidArgumentError(HQCException):
    """Raised when an input violates an operation's preconditions"""

    exit_code = 2


class SpaceMismatchError(InvalidArgumentError):
    """Raised when operators or states live on different mode spaces"""

    pass


class ModelMismatchError(InvalidArgumentError):
    """Raised when a parameter point or loop belongs to another model"""

    pass


class UnknownCoordinateError(InvalidArgumentError):
    """Raised when a real coordinate name or index does not exist in the model"""

    pass


class DimensionMismatchError(InvalidArgumentError):
    """Raised when a gate and a fiber vector have different dimensions"""

    pass


class ParameterBudgetError(InvalidArgumentError):
    """Raised when a parameter magnitude exceeds the configured hard limit"""

    pass


class LoopFormatError(InvalidArgumentError):
    """Raised when a loop description cannot be parsed"""

    pass


class LoopClosureError(InvalidArgumentError):
    """Raised when a loop is not closed or its segments do not join"""

    pass


class ToleranceError(HQCException):
    """Raised when a numerical check exceeds its tolerance"""

    exit_code = 3


class ContractViolationError(ToleranceError):
    """Raised when a matrix handed to the exponential is not anti-Hermitian"""

    pass


class ModelInconsistencyError(ToleranceError):
    """Raised when the reference Hamiltonian kernel has the wrong dimension"""

    pass


class AccuracyError(ToleranceError):
    """Raised when the plaquette size is outside the quadratic regime"""

    pass


class ResourceBudgetError(HQCException):
    """Raised when a truncated space exceeds the dimension budget"""

    exit_code = 4
