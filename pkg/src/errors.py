"""
Exception hierarchy shared by the engines, the analysis layer and the CLI.

InvalidInputError subclasses map to CLI exit code 2, NumericalError
subclasses to exit code 3.
"""


class FringeLabError(Exception):
    """Base class for every error raised by fringelab."""


class InvalidInputError(FringeLabError, ValueError):
    """Input that violates a documented precondition."""


class ConfigError(InvalidInputError):
    """Malformed configuration text. ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DataFormatError(InvalidInputError):
    """Malformed CSV input. ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GeometryError(InvalidInputError):
    pass


class NumericalError(FringeLabError, ArithmeticError):
    """A computation that cannot produce a meaningful number."""


class NoFringesError(NumericalError):
    pass


__all__ = [
    "FringeLabError",
    "InvalidInputError",
    "ConfigError",
    "DataFormatError",
    "GeometryError",
    "NumericalError",
    "NoFringesError",
]
