"""Exception types shared across the package."""


class KldecompError(Exception):
    """Base class for every error raised by kldecomp."""


class CartanError(KldecompError, ValueError):
    """Malformed, non-finite or non-crystallographic Cartan data."""


class SystemMismatchError(KldecompError, ValueError):
    """Two elements from different Coxeter systems were combined."""


class WordError(KldecompError, ValueError):
    """An invalid or non-reduced generator word.

    `position` is the 1-based index of the first offending letter, when
    a single letter can be blamed.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class WordTooLongError(KldecompError, ValueError):
    """A word exceeded the brute-force enumeration cap."""


class ConsistencyError(KldecompError, RuntimeError):
    """An internal invariant failed (bad input table or implementation bug)."""


class CacheCorruptError(KldecompError, RuntimeError):
    """An on-disk table cache file could not be parsed."""

    def __init__(self, path, reason: str):
        super().__init__(f"corrupt table cache at {path}: {reason}")
        self.path = path
        self.reason = reason
