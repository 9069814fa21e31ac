"""Shared exception types."""
from __future__ import annotations


class ParseError(ValueError):
    """Formula syntax error, with the offset of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PreconditionError(ValueError):
    """An operation's precondition failed; carries a concrete witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class RestrictionUndefinedError(ValueError):
    """A relation does not restrict coherently to a coordinate block."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured bound."""


class ProblemFormatError(ValueError):
    """A problem bundle violates the schema; carries a JSON-pointer path."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer
