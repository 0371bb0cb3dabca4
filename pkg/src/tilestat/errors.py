"""Shared exception types.

Every error raised on a documented failure path derives from TilestatError,
so CLI code can map "expected" failures to a nonzero exit without catching
arbitrary bugs.
"""


class TilestatError(Exception):
    pass


class DomainError(TilestatError, ValueError):
    """Mathematically invalid argument (negative time, bad radicand, ...)."""


class DepthExceeded(TilestatError, ValueError):
    """Requested iteration depth above the configured cap."""


class EmptyInput(TilestatError, ValueError):
    """An operation that needs data received none."""


class RangeViolation(TilestatError, ValueError):
    """A sample value fell outside the stated reference interval."""


class DegenerateConfig(TilestatError, ValueError):
    """Basis vectors are dependent, zero, or outside the first quadrant."""


class ParseError(TilestatError, ValueError):
    """Malformed serialized input."""


class UnknownModel(TilestatError, ValueError):
    """Point-set model name not in the registry."""


class UnsupportedConstants(TilestatError, ValueError):
    """Offset constants requested outside the tabulated range."""
