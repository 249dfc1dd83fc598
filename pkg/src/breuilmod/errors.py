"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class BreuilError(Exception):
    """Base class for all errors raised by breuilmod."""


# field layer
class CompositeP(BreuilError, ValueError):
    pass


class ReducibleModulus(BreuilError, ValueError):
    pass


class DivisionByZero(BreuilError, ZeroDivisionError):
    pass


# series layer
class SeriesSyntaxError(BreuilError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class VariableOutOfRange(BreuilError, ValueError):
    pass


class ContextMismatch(BreuilError, ValueError):
    pass


class NotAUnit(BreuilError, ValueError):
    pass


class OrderUnknown(BreuilError, ValueError):
    pass


class NoLambdaInField(BreuilError):
    """Every slope in the ground field kills the leading coefficient; extend the field."""


class NotNormalized(BreuilError, ValueError):
    pass


class PrecisionTooLow(BreuilError):
    def __init__(self, message: str, needed: int | None = None):
        if needed is not None:
            message = f"{message} (need precision >= {needed})"
        super().__init__(message)
        self.needed = needed


# modules layer
class DimensionMismatch(BreuilError, ValueError):
    pass


class InvalidCertificate(BreuilError):
    pass


class AnnihilationRefuted(BreuilError):
    def __init__(self, degree: int):
        super().__init__(f"cokernel not annihilated by hbar: obstruction in degree {degree}")
        self.degree = degree


class MissingCertificate(BreuilError):
    pass


class IllFormedPresentation(BreuilError, ValueError):
    pass


class BudgetExceeded(BreuilError):
    def __init__(self, message: str, statistics: dict):
        super().__init__(f"{message}: {statistics}")
        self.statistics = statistics


class NoMorphism(BreuilError):
    pass


# diagnosis layer
class NotRegularSequence(BreuilError):
    pass


class ShapeMismatch(BreuilError):
    def __init__(self, case: str, detail: str):
        super().__init__(f"case {case}: {detail}")
        self.case = case
        self.detail = detail


class UnsupportedDimension(BreuilError):
    pass


class FormatError(BreuilError, ValueError):
    pass
