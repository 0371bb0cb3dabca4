"""Plot request description and its validation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import SchemaMismatch

KINDS = ("hist", "stacked-hist", "scatter", "timing")
OVERLAYS = ("none", "poisson", "quadratic-fit")

# which overlays make sense on which plot kind
_KIND_OVERLAYS = {
    "hist": ("none", "poisson"),
    "stacked-hist": ("none",),
    "scatter": ("none",),
    "timing": ("none", "quadratic-fit"),
}

# stacked and timing plots draw exactly one payload; the others overlay any
_SINGLE_INPUT = ("stacked-hist", "timing")


@dataclass(frozen=True)
class PlotSpec:
    input_paths: tuple[str, ...]
    plot_kind: str
    output_path: str
    overlay: str = "none"
    title: Optional[str] = None

    def __post_init__(self):
        if self.plot_kind not in KINDS:
            raise SchemaMismatch("unknown plot kind %r; valid kinds: %s"
                                 % (self.plot_kind, ", ".join(KINDS)))
        if self.overlay not in OVERLAYS:
            raise SchemaMismatch("unknown overlay %r; valid overlays: %s"
                                 % (self.overlay, ", ".join(OVERLAYS)))
        if self.overlay not in _KIND_OVERLAYS[self.plot_kind]:
            raise SchemaMismatch(
                "overlay %r does not apply to %r plots"
                % (self.overlay, self.plot_kind))
        if not self.input_paths:
            raise SchemaMismatch("need at least one input path")
        if self.plot_kind in _SINGLE_INPUT and len(self.input_paths) != 1:
            raise SchemaMismatch("%r plots take exactly one input"
                                 % self.plot_kind)
        if not self.output_path:
            raise SchemaMismatch("need an output path")

    @classmethod
    def from_json(cls, data: dict) -> "PlotSpec":
        if not isinstance(data, dict):
            raise SchemaMismatch("plot spec must be a JSON object")
        known = {"inputPaths", "plotKind", "overlay", "outputPath", "title"}
        extra = set(data) - known
        if extra:
            raise SchemaMismatch("unknown spec fields: %s"
                                 % ", ".join(sorted(extra)))
        paths = data.get("inputPaths")
        if isinstance(paths, str):
            paths = [paths]
        if not isinstance(paths, Sequence) or \
                not all(isinstance(p, str) for p in paths):
            raise SchemaMismatch("inputPaths must be a list of strings")
        return cls(
            input_paths=tuple(paths),
            plot_kind=data.get("plotKind", ""),
            output_path=data.get("outputPath", ""),
            overlay=data.get("overlay") or "none",
            title=data.get("title"),
        )
