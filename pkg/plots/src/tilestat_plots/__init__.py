"""Figure rendering for tilestat JSON outputs.

This package never recomputes statistics; it draws the numbers found in
the JSON files the tilestat command line writes.
"""

from .errors import EmptyData, PlotsError, SchemaMismatch
from .render import RenderResult, render
from .spec import KINDS, OVERLAYS, PlotSpec

__version__ = "0.1.0"

__all__ = [
    "EmptyData",
    "KINDS",
    "OVERLAYS",
    "PlotSpec",
    "PlotsError",
    "RenderResult",
    "SchemaMismatch",
    "render",
    "__version__",
]
