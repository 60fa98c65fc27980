"""Exception hierarchy shared by the package."""


class Sol3Error(Exception):
    """Base class for all errors raised by sol3."""


class DomainError(Sol3Error, ValueError):
    """Input outside the representable or mathematical domain."""


class SingularPointError(Sol3Error, ValueError):
    """The immersion is not regular at a requested parameter point."""


class QuadratureError(Sol3Error, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ConvergenceError(Sol3Error, ArithmeticError):
    """An iterative solver hit its iteration cap."""


class CurveSpecError(Sol3Error, ValueError):
    """A textual curve specification could not be parsed.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
