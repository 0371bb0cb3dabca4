"""Direction, gap, pair-correlation and equidistribution statistics.

Directions are computed and deduplicated in exact arithmetic (a slope is a
field element, never a rounded float), then exported as sorted floats.
Gap and histogram statistics are plain float arithmetic on those exports.

Pair scans are O(N^2) row-vectorized numpy.  The row range is split into
chunks whose partial histograms are merged by integer addition, so results
are independent of the chunking; TILESTAT_THREADS > 1 runs chunks in a
thread pool.
"""

from __future__ import annotations

import bisect
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (DomainError, EmptyInput, ParseError, RangeViolation,
                     TilestatError)
from .geometry import PointSet


def thread_count() -> int:
    raw = os.environ.get("TILESTAT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(slots=True)
class DirectionSeries:
    kind: str  # "slope" | "angle"
    values: list[float]
    source_count: int
    excluded_vertical: int = 0
    label: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "values": self.values,
            "sourceCount": self.source_count,
            "excludedVertical": self.excluded_vertical,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DirectionSeries":
        try:
            return cls(data["kind"], [float(v) for v in data["values"]],
                       int(data["sourceCount"]),
                       int(data.get("excludedVertical", 0)),
                       data.get("label", ""))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("bad direction series payload: %s" % exc) from None


def directions(s: PointSet, kind: str = "slope", dedupe: bool = False) -> DirectionSeries:
    """Slopes y/x (or angles arctan(y/x)) of the nonzero points of s.

    The origin never contributes.  Vertical points are excluded from the
    slope series (their count is recorded) and contribute pi/2 to the
    angle series.  With dedupe=True equal exact directions collapse.
    """
    if kind not in ("slope", "angle"):
        raise DomainError("kind must be 'slope' or 'angle'")
    slopes = []
    vertical = 0
    for p in s:
        xs = p.x.sign()
        if xs == 0:
            if p.y.sign() == 0:
                continue
            vertical += 1
            continue
        slopes.append(p.y / p.x)
    source = len(slopes) + (vertical if kind == "angle" else 0)
    if dedupe:
        slopes = list(dict.fromkeys(slopes))
        vertical = min(vertical, 1)
    slopes.sort()
    if kind == "slope":
        values = [float(v) for v in slopes]
    else:
        values = [math.atan(float(v)) for v in slopes]
        values.extend([math.pi / 2] * vertical)
    return DirectionSeries(kind, values, source, vertical, label=s.label)


@dataclass(slots=True)
class GapSeries:
    kind: str
    gaps: list[float]
    normalization: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "gaps": self.gaps,
                "normalization": self.normalization,
                "minGap": min(self.gaps) if self.gaps else None}


def normalized_gaps(d: DirectionSeries, use_value_count: bool = False) -> GapSeries:
    """Consecutive gaps of the sorted series, scaled by N.

    N defaults to the pre-dedup source count; use_value_count=True scales
    by the (possibly deduplicated) series length instead.
    """
    if len(d.values) < 2:
        raise EmptyInput("need at least two direction values")
    n = len(d.values) if use_value_count else d.source_count
    vals = d.values
    gaps = [n * (vals[i + 1] - vals[i]) for i in range(len(vals) - 1)]
    return GapSeries(d.kind, gaps, n)


class Histogram:
    """Integer counts over explicit bin edges.

    Bin i holds values in [edges[i], edges[i+1]); the last bin is closed
    on the right.  Everything else lands in the overflow counter, so
    sum(counts) + overflow == total always holds.  normMode is metadata:
    counts stay raw integers, densities() divides by total * width.
    """

    __slots__ = ("edges", "counts", "total", "overflow", "norm_mode", "meta")

    def __init__(self, edges: Sequence[float], counts: Optional[Sequence[int]] = None,
                 total: int = 0, overflow: int = 0, norm_mode: str = "raw",
                 meta: Optional[dict] = None):
        edges = [float(e) for e in edges]
        if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
            raise DomainError("edges must be strictly increasing, length >= 2")
        self.edges = edges
        self.counts = list(counts) if counts is not None else [0] * (len(edges) - 1)
        if len(self.counts) != len(edges) - 1:
            raise DomainError("need one count per bin")
        self.total = total
        self.overflow = overflow
        if norm_mode not in ("raw", "pdf"):
            raise DomainError("normMode must be 'raw' or 'pdf'")
        self.norm_mode = norm_mode
        self.meta = dict(meta or {})

    def bin_index(self, value: float) -> int:
        """Index of the bin holding value, or -1 for overflow."""
        i = bisect.bisect_right(self.edges, value) - 1
        if i == len(self.counts) and value == self.edges[-1]:
            return len(self.counts) - 1
        if 0 <= i < len(self.counts):
            return i
        return -1

    def add(self, value: float) -> None:
        i = self.bin_index(value)
        if i < 0:
            self.overflow += 1
        else:
            self.counts[i] += 1
        self.total += 1

    def add_many(self, values: Iterable[float]) -> None:
        for v in values:
            self.add(v)

    def merge(self, other: "Histogram") -> "Histogram":
        if self.edges != other.edges:
            raise DomainError("cannot merge histograms with different edges")
        return Histogram(self.edges,
                         [a + b for a, b in zip(self.counts, other.counts)],
                         self.total + other.total,
                         self.overflow + other.overflow,
                         self.norm_mode, self.meta)

    def densities(self) -> list[float]:
        if self.total == 0:
            return [0.0] * len(self.counts)
        widths = [b - a for a, b in zip(self.edges, self.edges[1:])]
        return [c / (self.total * w) for c, w in zip(self.counts, widths)]

    def check_conservation(self) -> bool:
        return sum(self.counts) + self.overflow == self.total

    def to_json(self) -> dict:
        return {
            "edges": self.edges,
            "counts": self.counts,
            "total": self.total,
            "overflow": self.overflow,
            "normMode": self.norm_mode,
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Histogram":
        try:
            return cls(data["edges"], data["counts"], int(data["total"]),
                       int(data.get("overflow", 0)), data.get("normMode", "raw"),
                       data.get("meta"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("bad histogram payload: %s" % exc) from None

    @classmethod
    def from_values(cls, values: Iterable[float], edges: Sequence[float],
                    norm_mode: str = "raw", meta: Optional[dict] = None) -> "Histogram":
        h = cls(edges, norm_mode=norm_mode, meta=meta)
        h.add_many(values)
        return h


def build_edges(spec: str, values: Optional[Sequence[float]] = None) -> list[float]:
    """Parse a bin spec: 'auto:K', 'lo:hi:K', or comma-separated edges."""
    try:
        if spec.startswith("auto:"):
            k = int(spec.split(":", 1)[1])
            if k < 1:
                raise DomainError("need at least one bin")
            if not values or len(values) == 0:
                raise EmptyInput("auto bins need data")
            lo, hi = min(values), max(values)
            if hi <= lo:
                hi = lo + 1.0
            return [lo + (hi - lo) * i / k for i in range(k + 1)]
        if "," in spec:
            return [float(tok) for tok in spec.split(",")]
        parts = spec.split(":")
        if len(parts) == 3:
            lo, hi, k = float(parts[0]), float(parts[1]), int(parts[2])
            if k < 1 or hi <= lo:
                raise DomainError("bad bin range")
            return [lo + (hi - lo) * i / k for i in range(k + 1)]
    except TilestatError:
        raise
    except (ValueError, IndexError):
        pass
    raise DomainError("unrecognized bin spec %r" % spec)


def _pair_values_row(xs, ys, i, mode, scale):
    dx = xs[i + 1:] - xs[i]
    dy = ys[i + 1:] - ys[i]
    d2 = dx * dx + dy * dy
    vals = np.sqrt(d2) if mode == "distance" else d2
    if scale != 1.0:
        vals = vals * scale
    return vals


def _bin_rows(xs, ys, rows, mode, scale, edges_arr, nbins):
    counts = np.zeros(nbins, dtype=np.int64)
    overflow = 0
    last_edge = edges_arr[-1]
    for i in rows:
        vals = _pair_values_row(xs, ys, i, mode, scale)
        idx = np.searchsorted(edges_arr, vals, side="right") - 1
        idx[vals == last_edge] = nbins - 1
        good = (idx >= 0) & (idx < nbins)
        counts += np.bincount(idx[good], minlength=nbins)
        overflow += int((~good).sum())
    return counts, overflow


def pair_correlation(s: PointSet, mode: str = "distance", scale: float = 1.0,
                     edges: Sequence[float] = ()) -> Histogram:
    """Histogram of scale * pairwise (squared) distances over all C(N,2)
    unordered pairs of s."""
    if mode not in ("distance", "squaredDistance"):
        raise DomainError("mode must be 'distance' or 'squaredDistance'")
    n = len(s)
    if n < 2:
        raise EmptyInput("need at least two points for pair statistics")
    arr = s.float_array()
    xs, ys = arr[:, 0].copy(), arr[:, 1].copy()
    edges = [float(e) for e in edges]
    hist = Histogram(edges, meta={"mode": mode, "scale": scale,
                                  "pointCount": n, "label": s.label})
    edges_arr = np.asarray(edges)
    nbins = len(edges) - 1
    rows = list(range(n - 1))
    workers = thread_count()
    if workers > 1 and len(rows) > 2 * workers:
        chunks = [rows[k::workers] for k in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda ch: _bin_rows(xs, ys, ch, mode, scale, edges_arr, nbins),
                chunks))
    else:
        parts = [_bin_rows(xs, ys, rows, mode, scale, edges_arr, nbins)]
    for counts, overflow in parts:
        hist.counts = [a + int(b) for a, b in zip(hist.counts, counts)]
        hist.overflow += overflow
    hist.total = n * (n - 1) // 2
    return hist


def pair_value_range(s: PointSet, mode: str = "distance",
                     scale: float = 1.0) -> tuple[float, float]:
    """Min and max over all pairwise values, without storing them.

    Prepass for auto bin specs on pair statistics.
    """
    if mode not in ("distance", "squaredDistance"):
        raise DomainError("mode must be 'distance' or 'squaredDistance'")
    if len(s) < 2:
        raise EmptyInput("need at least two points for pair statistics")
    arr = s.float_array()
    xs, ys = arr[:, 0], arr[:, 1]
    lo, hi = math.inf, -math.inf
    for i in range(len(s) - 1):
        vals = _pair_values_row(xs, ys, i, mode, scale)
        lo = min(lo, float(vals.min()))
        hi = max(hi, float(vals.max()))
    return lo, hi


def equidistribution_stat(d: DirectionSeries | Sequence[float],
                          a: float, b: float) -> float:
    """Kolmogorov-Smirnov distance between the empirical distribution of
    the values and the uniform law on [a, b]."""
    values = d.values if isinstance(d, DirectionSeries) else list(d)
    if not values:
        raise EmptyInput("no values for equidistribution statistic")
    if b <= a:
        raise DomainError("need a < b")
    vals = sorted(values)
    if vals[0] < a or vals[-1] > b:
        raise RangeViolation("values outside [%g, %g]" % (a, b))
    n = len(vals)
    width = b - a
    stat = 0.0
    for i, x in enumerate(vals):
        cdf = (x - a) / width
        stat = max(stat, (i + 1) / n - cdf, cdf - i / n)
    return stat


def poisson_reference(t: float) -> float:
    """Gap survival probability e^(-t) of a unit-rate Poisson point set."""
    if t < 0:
        raise DomainError("time must be nonnegative")
    return math.exp(-t)
