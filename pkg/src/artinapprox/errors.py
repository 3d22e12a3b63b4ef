"""Exception hierarchy shared by every module."""


class ArtinError(Exception):
    """Base class for all errors raised by artinapprox."""


class DivisionByZero(ArtinError, ZeroDivisionError):
    pass


class NonInvertible(ArtinError):
    """Raised when an element shares a factor with the modulus."""


class ModulusMismatch(ArtinError):
    pass


class RingMismatch(ArtinError):
    pass


class OrderMismatch(ArtinError):
    pass


class ZeroPolynomial(ArtinError):
    pass


class NotZeroDimensionalHandled(ArtinError):
    """Back-substitution met a free or non-triangular variable."""


class CapExceeded(ArtinError):
    pass


class BadBounds(ArtinError):
    pass


class OutOfRange(ArtinError):
    pass


class AlphaListTooShort(ArtinError):
    pass


class DuplicateAlphas(ArtinError):
    pass


class InsufficientCap(ArtinError):
    pass


class ComponentMismatch(ArtinError):
    pass


class ValidationError(ArtinError):
    pass


class ParseError(ArtinError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
