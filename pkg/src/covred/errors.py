"""Domain exceptions.

Everything raised intentionally by this package derives from CovredError,
so callers (and the CLI) can distinguish domain failures from bugs.
"""

from __future__ import annotations


class CovredError(Exception):
    """Base class for all domain errors."""


class UniverseError(CovredError):
    """Empty universe or duplicate object labels."""


class UnknownLabelError(CovredError):
    """A block names an object that is not in the universe."""


class EmptyBlockError(CovredError):
    """A covering element must be nonempty."""


class NotACoverError(CovredError):
    """The union of the blocks does not reach every object."""

    def __init__(self, message: str, uncovered: tuple[str, ...]):
        super().__init__(message)
        self.uncovered = uncovered


class DuplicateNameError(CovredError):
    """Two covers in one family share a name."""


class UnknownCoverError(CovredError):
    """A cover name does not occur in the family."""


class EmptySubsetError(CovredError):
    """Granulation over an empty attribute subset is undefined."""


class LastCoverError(CovredError):
    """Indispensability of the only cover in a family is undefined."""


class TooManyCoversError(CovredError):
    """Exhaustive subset enumeration refused (2^m guard)."""


class DocumentError(CovredError):
    """Malformed cover-family document; message carries the position."""


class MissingValueError(CovredError):
    """Tabular input has an absent or ragged cell."""


class NonNumericValueError(CovredError):
    """A numeric derivation strategy met a value it cannot parse."""


class ConfigError(CovredError):
    """Invalid derivation configuration (epsilon, bin edges, overlap)."""
