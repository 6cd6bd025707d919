"""Exception types shared across the package.

Everything raised on bad *data* derives from :class:`SensekitError` so the
CLI can map it to a single exit code; genuine programming errors (bad
arguments to library calls) use the built-in ``ValueError``.
"""


class SensekitError(Exception):
    """Base class for data and state errors raised by this package."""


class FormatError(SensekitError):
    """A line-oriented input file violates its format contract."""

    def __init__(self, message, path=None, line=None):
        detail = message
        if path is not None:
            detail = f"{path}: {detail}"
        if line is not None:
            detail = f"{detail} (line {line})"
        super().__init__(detail)
        self.path = path
        self.line = line


class ConflictError(SensekitError):
    """Two records define the same key with different content."""


class MissingEntryError(SensekitError):
    """A verb, sense, or word was looked up but is not present."""


class UnknownWordError(MissingEntryError):
    """A word is absent from the thesaurus (policy ``error`` only)."""


class ConfigError(SensekitError):
    """A configuration value or resource is unusable."""


class CoverageError(SensekitError):
    """A fitted model does not cover the branch being queried."""


class PoolExhaustedError(SensekitError):
    """select_next was called with an empty example pool."""
