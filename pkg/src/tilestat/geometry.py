"""Exact planar geometry: points, affine maps, substitution iteration.

Coordinates live in Q(gamma) (see golden.py), so point identity is decided
by canonical form, never by epsilon comparison.  A substitution rule is a
polygonal prototile plus a list of contracting affine maps; iterating it n
times yields the vertex set of the n-th subdivision.  The iteration uses
the identity  A_n = union_i g_i(A_{n-1}),  which visits each output point
once instead of walking all k^n map words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .errors import DepthExceeded, DomainError, ParseError
from .golden import GoldenValue

Coord = Union[GoldenValue, int, Fraction]


@dataclass(frozen=True, slots=True)
class Point:
    x: GoldenValue
    y: GoldenValue

    @classmethod
    def of(cls, x: Coord, y: Coord) -> "Point":
        return cls(GoldenValue.of(x), GoldenValue.of(y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, s: Coord) -> "Point":
        return Point(self.x * s, self.y * s)

    def norm2(self) -> GoldenValue:
        return self.x * self.x + self.y * self.y

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def to_json(self) -> dict:
        xf, yf = self.to_float()
        return {"x": self.x.to_json(), "y": self.y.to_json(), "xf": xf, "yf": yf}

    @classmethod
    def from_json(cls, data: dict) -> "Point":
        try:
            return cls(GoldenValue.from_json(data["x"]), GoldenValue.from_json(data["y"]))
        except KeyError as exc:
            raise ParseError("point payload missing %s" % exc) from None


@dataclass(frozen=True, slots=True)
class AffineMap:
    """x -> M x + t with M = [[a, b], [c, d]], t = (tx, ty)."""

    a: GoldenValue
    b: GoldenValue
    c: GoldenValue
    d: GoldenValue
    tx: GoldenValue
    ty: GoldenValue

    @classmethod
    def of(cls, a: Coord, b: Coord, c: Coord, d: Coord,
           tx: Coord = 0, ty: Coord = 0) -> "AffineMap":
        g = GoldenValue.of
        return cls(g(a), g(b), g(c), g(d), g(tx), g(ty))

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls.of(1, 0, 0, 1)

    @classmethod
    def scaling(cls, s: Coord) -> "AffineMap":
        return cls.of(s, 0, 0, s)

    def apply(self, p: Point) -> Point:
        return Point(self.a * p.x + self.b * p.y + self.tx,
                     self.c * p.x + self.d * p.y + self.ty)

    def __call__(self, p: Point) -> Point:
        return self.apply(p)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: (self.compose(other))(p) == self(other(p))."""
        return AffineMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.a * other.tx + self.b * other.ty + self.tx,
            self.c * other.tx + self.d * other.ty + self.ty,
        )

    def spectral_norm(self) -> float:
        # Largest singular value of the linear part, evaluated in floats;
        # only used as a sanity gate on fixed rule tables.
        a, b, c, d = (float(self.a), float(self.b), float(self.c), float(self.d))
        t = a * a + b * b + c * c + d * d
        det = a * d - b * c
        disc = max(t * t - 4 * det * det, 0.0)
        return math.sqrt((t + math.sqrt(disc)) / 2)

    def is_contracting(self) -> bool:
        return self.spectral_norm() < 1.0 - 1e-9


class PointSet:
    """Insertion-ordered set of exact points with a label and a step index."""

    __slots__ = ("label", "step", "_points")

    def __init__(self, points: Iterable[Point] = (), label: str = "", step: int = 0):
        self.label = label
        self.step = step
        self._points: dict[Point, None] = dict.fromkeys(points)

    def add(self, p: Point) -> None:
        self._points[p] = None

    def update(self, points: Iterable[Point]) -> None:
        self._points.update(dict.fromkeys(points))

    def union(self, other: "PointSet", label: Optional[str] = None) -> "PointSet":
        out = PointSet(self._points, label=label or self.label, step=self.step)
        out.update(other._points)
        return out

    def __contains__(self, p: Point) -> bool:
        return p in self._points

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._points.keys() == other._points.keys()

    def __repr__(self):
        return "PointSet(%r, n=%d, step=%d)" % (self.label, len(self), self.step)

    def points(self) -> list[Point]:
        return list(self._points)

    def float_array(self):
        """N x 2 float64 view for statistics code."""
        import numpy as np

        out = np.empty((len(self._points), 2), dtype=np.float64)
        for i, p in enumerate(self._points):
            out[i, 0] = float(p.x)
            out[i, 1] = float(p.y)
        return out

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "step": self.step,
            "points": [p.to_json() for p in self._points],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PointSet":
        try:
            points = [Point.from_json(p) for p in data["points"]]
            return cls(points, label=data.get("label", ""), step=int(data.get("step", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("bad point set payload: %s" % exc) from None


def affine_apply(m: AffineMap, s: PointSet, label: Optional[str] = None) -> PointSet:
    return PointSet((m(p) for p in s), label=label or s.label, step=s.step)


class SubstitutionRule:
    """Prototile polygon plus contracting child maps."""

    __slots__ = ("name", "prototile", "maps", "depth_cap")

    def __init__(self, name: str, prototile: list[Point], maps: list[AffineMap],
                 depth_cap: int = 12):
        if len(prototile) < 3:
            raise DomainError("prototile needs at least 3 vertices")
        if not maps:
            raise DomainError("rule needs at least one map")
        for m in maps:
            if not m.is_contracting():
                raise DomainError("rule %r has a non-contracting map" % name)
        self.name = name
        self.prototile = list(prototile)
        self.maps = list(maps)
        self.depth_cap = depth_cap

    def __repr__(self):
        return "SubstitutionRule(%r, %d maps)" % (self.name, len(self.maps))


def substitute(rule: SubstitutionRule, n: int) -> PointSet:
    """Vertex set of the n-th subdivision of the rule's prototile."""
    if n < 0:
        raise DomainError("depth must be nonnegative")
    if n > rule.depth_cap:
        raise DepthExceeded("depth %d above cap %d for rule %r"
                            % (n, rule.depth_cap, rule.name))
    current = PointSet(rule.prototile, label=rule.name, step=0)
    for k in range(1, n + 1):
        nxt = PointSet(label=rule.name, step=k)
        for m in rule.maps:
            for p in current:
                nxt.add(m(p))
        current = nxt
    return current


def _orient(a: Point, b: Point, p: Point) -> int:
    v = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)
    return v.sign()


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    if _orient(a, b, p) != 0:
        return False
    d = b - a
    t = (p.x - a.x) * d.x + (p.y - a.y) * d.y
    return t.sign() >= 0 and (t - d.norm2()).sign() <= 0


def point_in_polygon(p: Point, vertices: list[Point]) -> bool:
    """Exact boundary-inclusive membership test for a simple polygon."""
    n = len(vertices)
    for i in range(n):
        if _on_segment(vertices[i], vertices[(i + 1) % n], p):
            return True
    wn = 0
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        a_below = (a.y - p.y).sign() <= 0
        b_below = (b.y - p.y).sign() <= 0
        if a_below and not b_below and _orient(a, b, p) > 0:
            wn += 1
        elif not a_below and b_below and _orient(a, b, p) < 0:
            wn -= 1
    return wn != 0
