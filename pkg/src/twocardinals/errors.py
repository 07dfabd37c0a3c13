"""Exception hierarchy shared across the package."""

from __future__ import annotations


class TwoCardinalError(Exception):
    """Base class for all package errors."""


class InputError(TwoCardinalError):
    """Malformed data: bad JSON, out-of-range points, invalid scripts or flags."""


class PreconditionError(TwoCardinalError):
    """An operation was called with arguments violating its stated precondition."""


class StructureError(TwoCardinalError):
    """An assumption guaranteed on verified instances failed mid-computation."""


class RangeError(TwoCardinalError):
    """A value left the representable range of the small-ordinal oracle."""
