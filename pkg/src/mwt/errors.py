"""Exception types shared across the toolkit."""

from __future__ import annotations


class MwtError(Exception):
    """Base class for all toolkit errors."""


class FormatError(MwtError):
    """A file does not conform to its declared format.

    Carries the offending path and, where meaningful, a 1-based line number.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}: " if line is None else f"{path}:{line}: "
        super().__init__(prefix + message)


class ConfigError(MwtError):
    """A pipeline or operation was configured inconsistently."""


class BindingError(MwtError):
    """An embedding matrix does not belong to the given vocabulary."""


class SequenceError(MwtError):
    """A token sequence cannot be decoded (e.g. starts mid-word)."""


class ManifestError(MwtError):
    """A pipeline manifest references missing or drifted files."""
