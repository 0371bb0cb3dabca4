"""Named exact point-set models.

Three families:

* the two-scale chair recursion: level sets L_0, L_1 are fixed seed
  polygon vertex sets, and L_n is the union of a quarter-turn
  phi^(-1/2)-contraction of L_{n-1} with a reflected phi^(-1)-contraction
  of L_{n-2};
* single-prototile substitution rules (4-tile half-scale chair, 9-tile
  third-scale chair, quartered unit square) iterated by geometry.substitute;
* the integer test lattice 0 < y < x <= r used for calibration.

Also here: the orbit check asking whether images of level-set vectors
under the two triangle-group generators [[1, phi], [0, 1]] and
[[1, 0], [phi, 1]] land back in a scaled copy of some level set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DepthExceeded, DomainError
from .geometry import AffineMap, Point, PointSet, SubstitutionRule, substitute
from .golden import PHI, GoldenValue

CHAIR_DEPTH_CAP = 21

_g = GoldenValue.gamma_power
_half = Fraction(1, 2)


def _pt(x, y) -> Point:
    return Point.of(x, y)


# Quarter-turn contraction by phi^(-1/2) into the lower-right leg, and
# x-mirror contraction by phi^(-1) into the upper-left leg.
MAP_LONG = AffineMap.of(0, -_g(-1), _g(-1), 0, _g(5), 0)
MAP_SHORT = AffineMap.of(_g(-2), 0, 0, -_g(-2), 0, _g(6))

_BASE0 = [
    _pt(0, 0),
    _pt(_g(5), 0),
    _pt(_g(5), _g(4)),
    _pt(_g(3), _g(4)),
    _pt(_g(3), _g(6)),
    _pt(0, _g(6)),
]
_BASE1_EXTRA = [
    _pt(0, _g(2)),
    _pt(_g(1), _g(2)),
    _pt(_g(1), _g(4)),
]

_chair_cache: list[PointSet] = []


def _chair_levels(n: int) -> list[PointSet]:
    if n > CHAIR_DEPTH_CAP:
        raise DepthExceeded("chair level %d above cap %d" % (n, CHAIR_DEPTH_CAP))
    if n < 0:
        raise DomainError("chair level must be nonnegative")
    if not _chair_cache:
        _chair_cache.append(PointSet(_BASE0, label="ammann-chair", step=0))
        lvl1 = PointSet(_BASE0 + _BASE1_EXTRA, label="ammann-chair", step=1)
        _chair_cache.append(lvl1)
    while len(_chair_cache) <= n:
        k = len(_chair_cache)
        nxt = PointSet(label="ammann-chair", step=k)
        for p in _chair_cache[k - 1]:
            nxt.add(MAP_LONG(p))
        for p in _chair_cache[k - 2]:
            nxt.add(MAP_SHORT(p))
        _chair_cache.append(nxt)
    return _chair_cache


def ammann_chair(n: int) -> PointSet:
    """Level-n vertex set L_n of the two-scale chair recursion."""
    return _chair_levels(n)[n]


def ammann_chair_split(n: int) -> tuple[PointSet, PointSet]:
    """The two halves (short image of L_{n-2}, long image of L_{n-1})
    whose union is L_n.  Needs n >= 2."""
    if n < 2:
        raise DomainError("split needs n >= 2")
    levels = _chair_levels(n - 1)
    short = PointSet((MAP_SHORT(p) for p in levels[n - 2]),
                     label="ammann-chair-short", step=n)
    long_ = PointSet((MAP_LONG(p) for p in levels[n - 1]),
                     label="ammann-chair-long", step=n)
    return short, long_


_CHAIR_PROTOTILE = [
    _pt(0, 0), _pt(1, 0), _pt(1, _half), _pt(_half, _half), _pt(_half, 1), _pt(0, 1),
]

_q = Fraction(1, 4)
AMMANN_CHAIR2_RULE = SubstitutionRule(
    "ammann-chair2",
    _CHAIR_PROTOTILE,
    [
        AffineMap.of(_half, 0, 0, _half, 0, 0),
        AffineMap.of(_half, 0, 0, _half, _q, _q),
        AffineMap.of(_half, 0, 0, -_half, 0, 1),
        AffineMap.of(-_half, 0, 0, _half, 1, 0),
    ],
)

_t = Fraction(1, 3)
_s = Fraction(1, 6)
CHAIR3_RULE = SubstitutionRule(
    "chair3",
    _CHAIR_PROTOTILE,
    [
        AffineMap.of(_t, 0, 0, _t, 0, 0),
        AffineMap.of(_t, 0, 0, _t, _s, _s),
        AffineMap.of(_t, 0, 0, _t, _t, _t),
        AffineMap.of(_t, 0, 0, -_t, 0, 2 * _t),
        AffineMap.of(_t, 0, 0, -_t, 0, 1),
        AffineMap.of(_t, 0, 0, -_t, 2 * _t, _half),
        AffineMap.of(-_t, 0, 0, _t, _half, 2 * _t),
        AffineMap.of(-_t, 0, 0, _t, 2 * _t, 0),
        AffineMap.of(-_t, 0, 0, _t, 1, 0),
    ],
)

SQUARE_GRID_RULE = SubstitutionRule(
    "square-grid",
    [_pt(0, 0), _pt(1, 0), _pt(1, 1), _pt(0, 1)],
    [
        AffineMap.of(_half, 0, 0, _half, 0, 0),
        AffineMap.of(_half, 0, 0, _half, _half, 0),
        AffineMap.of(_half, 0, 0, _half, 0, _half),
        AffineMap.of(_half, 0, 0, _half, _half, _half),
    ],
)


def ammann_chair2(n: int) -> PointSet:
    out = substitute(AMMANN_CHAIR2_RULE, n)
    out.step = n
    return out


def chair3(n: int) -> PointSet:
    out = substitute(CHAIR3_RULE, n)
    out.step = n
    return out


def square_grid(n: int) -> PointSet:
    out = substitute(SQUARE_GRID_RULE, n)
    out.step = n
    return out


def integer_lattice(r: int) -> PointSet:
    """Integer points with 0 < y < x <= r; r(r-1)/2 of them."""
    if r < 1:
        raise DomainError("lattice bound must be >= 1")
    out = PointSet(label="integer-lattice", step=r)
    for x in range(2, r + 1):
        for y in range(1, x):
            out.add(_pt(x, y))
    return out


HECKE_GEN_1 = AffineMap.of(1, PHI, 0, 1)
HECKE_GEN_2 = AffineMap.of(1, 0, PHI, 1)


@dataclass(frozen=True, slots=True)
class HeckeRecord:
    v: Point
    generator: int
    found: bool
    a: Optional[int]
    p: Optional[int]
    m: Optional[int]
    w: Optional[Point]

    def to_json(self) -> dict:
        out = {
            "v": self.v.to_json(),
            "generator": self.generator,
            "found": self.found,
        }
        if self.found:
            out.update({"a": self.a, "p": self.p, "m": self.m,
                        "w": self.w.to_json()})
        return out


@dataclass(slots=True)
class HeckeReport:
    level: int
    search_depth: int
    records: list[HeckeRecord]

    @property
    def found_count(self) -> int:
        return sum(1 for r in self.records if r.found)

    @property
    def fraction(self) -> float:
        return self.found_count / len(self.records) if self.records else 0.0

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "searchDepth": self.search_depth,
            "total": len(self.records),
            "found": self.found_count,
            "fraction": self.fraction,
            "records": [r.to_json() for r in self.records],
        }


def hecke_orbit_check(n: int, search_depth: int = 6,
                      a_max: int = 8, p_max: int = 12) -> HeckeReport:
    """For each v in L_n and each generator, search for integers
    a in [1, a_max], p in [0, p_max] and a level m <= search_depth with
    g v = a * phi^(p/2) * w for some w in L_m.  Matches record the
    minimal such m."""
    levels = _chair_levels(search_depth)
    index: dict[Point, int] = {}
    for m in range(search_depth + 1):
        for pt in levels[m]:
            index.setdefault(pt, m)

    inverses = [(a, p, GoldenValue.gamma_power(-p) / a)
                for a in range(1, a_max + 1) for p in range(0, p_max + 1)]

    records = []
    for v in ammann_chair(n):
        for gen_idx, gen in ((1, HECKE_GEN_1), (2, HECKE_GEN_2)):
            u = gen(v)
            hit = None
            for a, p, inv in inverses:
                w = Point(u.x * inv, u.y * inv)
                m = index.get(w)
                if m is not None:
                    hit = HeckeRecord(v, gen_idx, True, a, p, m, w)
                    break
            records.append(hit or HeckeRecord(v, gen_idx, False, None, None, None, None))
    return HeckeReport(n, search_depth, records)
