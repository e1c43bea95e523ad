"""Exception hierarchy shared by every module in the package."""


class SymProdError(Exception):
    """Base class for all errors raised by symprod."""


class InvalidInputError(SymProdError, ValueError):
    """Non-finite or malformed numerical input."""


class PreconditionError(SymProdError, ValueError):
    """An operation was called outside its documented domain."""


class PoleError(PreconditionError):
    """Evaluation exactly at a pole of a defining function."""


class DomainError(PreconditionError):
    """A point lies outside the declared domain of a holomorphic map."""


class UnsupportedOrderError(PreconditionError):
    """Requested derivative order exceeds the closed-form limit."""


class NumericalFailure(SymProdError, ArithmeticError):
    """An iterative method did not converge.

    ``best_iterate`` carries the last iterate so callers can inspect it.
    """

    def __init__(self, message, best_iterate=None):
        super().__init__(message)
        self.best_iterate = best_iterate


class QuadratureError(NumericalFailure):
    """Quadrature refinement failed to meet the requested tolerance."""

    def __init__(self, message, est_error=None, best_iterate=None):
        super().__init__(message, best_iterate)
        self.est_error = est_error


class ContourEvaluationError(SymProdError, ArithmeticError):
    """The integrand produced a non-finite value at a quadrature node."""

    def __init__(self, message, curve=None, node=None, point=None):
        super().__init__(message)
        self.curve = curve
        self.node = node
        self.point = point


class WrongDiscError(PreconditionError):
    """An argument-principle count disagrees with the declared multiplicity."""

    def __init__(self, message, count=None, expected=None):
        super().__init__(message)
        self.count = count
        self.expected = expected


class NotInducedMapError(SymProdError, ValueError):
    """A map does not act on the diagonal like an induced map."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConfigError(SymProdError, ValueError):
    """A configuration or domain file failed validation.

    ``field`` names the offending key.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
