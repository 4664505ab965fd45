"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BuchiError(Exception):
    """Base class for all package errors."""


class DivisionByZero(BuchiError, ZeroDivisionError):
    pass


class FieldMismatch(BuchiError, TypeError):
    pass


class NotPrime(BuchiError, ValueError):
    pass


class IrreducibleSearchFailed(BuchiError, RuntimeError):
    pass


class ZeroPolynomial(BuchiError, ValueError):
    pass


class CharPUnsupportedShape(BuchiError, ValueError):
    pass


class DegreeTooSmall(BuchiError, ValueError):
    pass


class ZeroFunction(BuchiError, ValueError):
    pass


class TooShort(BuchiError, ValueError):
    pass


class PreconditionViolated(BuchiError, ValueError):
    pass


class DomainError(BuchiError, ValueError):
    pass


class EvenCharacteristic(BuchiError, ValueError):
    pass


class ConstantMap(BuchiError, ValueError):
    pass


class ConstantInput(BuchiError, ValueError):
    pass


class VerificationFailed(BuchiError, AssertionError):
    """A mathematical identity that must hold was found false.

    ``witness`` carries a JSON-serialisable description of the failing input.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class TheoremViolation(VerificationFailed):
    """An observation contradicting the function-field Büchi theorem."""


class ParseError(BuchiError, SyntaxError):
    """Malformed expression text; ``column`` is 0-based."""

    def __init__(self, message: str, source: str = "", column: int = 0):
        super().__init__(f"{message} at column {column}")
        self.source = source
        self.column = column


class WrongVariable(ParseError):
    pass


class NegativeExponent(ParseError):
    pass


class DivisionInPolyContext(ParseError):
    pass
