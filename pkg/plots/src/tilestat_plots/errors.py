class PlotsError(ValueError):
    """Base class for rendering failures."""


class SchemaMismatch(PlotsError):
    """Input JSON does not have the shape the plot kind needs."""


class EmptyData(PlotsError):
    """Input validates but holds nothing to draw."""
