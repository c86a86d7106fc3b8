"""Exception hierarchy shared by all permsteg modules."""

from __future__ import annotations


class PermstegError(Exception):
    """Base class for all errors raised by this package."""


class UnknownSymbol(PermstegError):
    """A stream token does not belong to the session alphabet."""


class InvalidAlphabet(PermstegError):
    """Alphabet construction or validation failed (duplicates, bad tokens, too small)."""


class InvalidModel(PermstegError):
    """Source model probabilities are malformed (non-positive or not normalized)."""


class NonPositive(PermstegError):
    """A quantity that must be >= 1 was not."""


class InvalidDelta(PermstegError):
    """Requested payload length is not admissible for the class size at hand."""


class PayloadOutOfRange(PermstegError):
    """Payload value does not fit in the drawn number of bits."""


class IndexOutOfRange(PermstegError):
    """Class index lies outside [0, class size)."""


class InvalidBlockLength(PermstegError):
    """Block length n is too small for the requested scheme."""


class SpaceTooLarge(PermstegError):
    """Exact enumeration was requested for an outcome space beyond the guard."""


class DegenerateCells(PermstegError):
    """Chi-square pooling left fewer than two usable cells."""


class EmptyTrace(PermstegError):
    """A rate measurement was requested for an embed run with no blocks."""
