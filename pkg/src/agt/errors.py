"""Exception hierarchy shared across the package."""


class AgtError(Exception):
    """Base class for all package errors."""


class UsageError(AgtError):
    """Invalid input: bad words, mismatched alphabets, malformed files."""


class ResourceLimitError(AgtError):
    """A configured safety cap was exceeded (not a hard abort: callers report it)."""

    def __init__(self, which: str, cap: int):
        super().__init__(f"resource limit exceeded: {which} (cap {cap})")
        self.which = which
        self.cap = cap


class IntegrityError(AgtError):
    """An internal consistency guarantee failed (e.g. a corrupt structure)."""
