"""Exception types shared across the package."""
from __future__ import annotations


class NilautError(Exception):
    pass


class ParseError(NilautError, ValueError):
    """Malformed input text; ``position`` is a 0-based character offset."""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(f"{message} at position {position}: {text!r}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class CapExceededError(NilautError, RuntimeError):
    """A search or closure would exceed its configured size cap."""


class GroupError(NilautError, ValueError):
    pass
