"""Exception hierarchy."""
from __future__ import annotations


class HyperdetError(Exception):
    """Base class for all errors raised by hyperdet."""


class InputError(HyperdetError, ValueError):
    """An argument violates a documented precondition."""


class DimensionError(InputError):
    """Operands have incompatible or wrong shapes."""


class UnsupportedFormatError(InputError):
    """The operation is not defined for this tensor format."""


class ParseError(InputError):
    """A JSON document is malformed; ``location`` names the offending path."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
