"""Recursive decomposition of the chair level sets' squared-distance values.

The level set L_n splits into a phi^(-1/2)-scaled copy of L_{n-1} and a
phi^(-1)-scaled copy of L_{n-2}, so its set of pairwise squared distances
splits exactly into phi^(-1) and phi^(-2) rescales of the previous two
value sets plus one cross term.  Iterating the cross term two more steps
motivates a seven-component stack: the three similarity rescales
phi^(-1) D(n-1), phi^(-2) D(n-2), phi^(-4) D(n-4) and four offset
families built from sums/differences of coordinates shifted by fixed
field constants.  The stack is a measured approximation, not an identity:
this module reports coverage, residual and spurious values rather than
asserting equality.

All distance values are exact field elements; histograms of their float
images are the export format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DomainError, UnsupportedConstants
from .geometry import Point, PointSet
from .golden import GoldenValue
from .stats import Histogram
from .tilings import MAP_LONG, MAP_SHORT, ammann_chair, ammann_chair_split


class DistanceValueSet:
    """A set of exact squared-distance values with a label."""

    __slots__ = ("label", "_values")

    def __init__(self, values: Iterable[GoldenValue] = (), label: str = ""):
        self.label = label
        self._values = set(values)

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, v: GoldenValue) -> bool:
        return v in self._values

    def __iter__(self):
        return iter(self._values)

    def __eq__(self, other):
        if not isinstance(other, DistanceValueSet):
            return NotImplemented
        return self._values == other._values

    def __repr__(self):
        return "DistanceValueSet(%r, %d values)" % (self.label, len(self))

    def scaled(self, factor: GoldenValue, label: Optional[str] = None) -> "DistanceValueSet":
        return DistanceValueSet((v * factor for v in self._values),
                                label=label or self.label)

    def union(self, other: "DistanceValueSet", label: str = "") -> "DistanceValueSet":
        return DistanceValueSet(self._values | other._values, label=label)

    def intersection(self, other: "DistanceValueSet", label: str = "") -> "DistanceValueSet":
        return DistanceValueSet(self._values & other._values, label=label)

    def difference(self, other: "DistanceValueSet", label: str = "") -> "DistanceValueSet":
        return DistanceValueSet(self._values - other._values, label=label)

    def sorted_floats(self) -> list[float]:
        return sorted(float(v) for v in self._values)

    def histogram(self, edges: Sequence[float], meta: Optional[dict] = None) -> Histogram:
        m = {"label": self.label, "valueCount": len(self)}
        m.update(meta or {})
        return Histogram.from_values(self.sorted_floats(), edges, meta=m)


def dset(a: PointSet, b: PointSet, label: str = "") -> DistanceValueSet:
    """Squared distances between distinct points, p in a, q in b, p != q.

    Identical points never contribute, even across two different sets:
    the split halves of a level set share boundary vertices, and a
    spurious zero from those shared points would break the exact split
    identity.
    """
    values = set()
    if a is b or set(a) == set(b):
        for p, q in itertools.combinations(list(a), 2):
            d = p - q
            values.add(d.x * d.x + d.y * d.y)
    else:
        for p in a:
            for q in b:
                if p == q:
                    continue
                d = p - q
                values.add(d.x * d.x + d.y * d.y)
    return DistanceValueSet(values, label=label or ("D(%s,%s)" % (a.label, b.label)))


_level_cache: dict[int, DistanceValueSet] = {}


def level_value_set(n: int) -> DistanceValueSet:
    """D(n): squared-distance value set of the chair level set L_n."""
    if n not in _level_cache:
        pts = ammann_chair(n)
        _level_cache[n] = dset(pts, pts, label="D(%d)" % n)
    return _level_cache[n]


@dataclass(frozen=True, slots=True)
class SplitParts:
    long_part: DistanceValueSet   # phi^(-1) rescale of D(n-1)
    short_part: DistanceValueSet  # phi^(-2) rescale of D(n-2)
    cross_part: DistanceValueSet

    def union(self) -> DistanceValueSet:
        return self.long_part.union(self.short_part).union(self.cross_part,
                                                           label="split-union")


def exact_split(n: int) -> SplitParts:
    """The exact three-part split of D(n); union equals D(n) as value sets."""
    if n < 2:
        raise DomainError("split needs n >= 2")
    short, long_ = ammann_chair_split(n)
    phi_inv = GoldenValue.phi_power(-1)
    return SplitParts(
        level_value_set(n - 1).scaled(phi_inv, label="phi^-1 D(%d)" % (n - 1)),
        level_value_set(n - 2).scaled(phi_inv * phi_inv,
                                      label="phi^-2 D(%d)" % (n - 2)),
        dset(short, long_, label="cross(%d)" % n),
    )


# Offset constants for the four cross-term families, stored as the scaled
# products they arise as; the canonical forms of i=5 reduce to (-2 phi, -2).
_phi = GoldenValue.phi_power
_gam = GoldenValue.gamma_power

OFFSETS: dict[int, tuple[GoldenValue, GoldenValue]] = {
    2: (_phi(-1) * 2 * _phi(3), _phi(-1) * 2 * _phi(2)),
    3: (_gam(-3) * 2 * _phi(4), _gam(-3) * 2 * _phi(3)),
    4: (GoldenValue(0), GoldenValue(0)),
    5: (_phi(-2) * -2 * _phi(3), _phi(-2) * -2 * _phi(2)),
}

# Signs (sx, sy) in (x1 + sx x2 - cx)^2 + (y1 + sy y2 - cy)^2 per family.
SIGN_PATTERNS: dict[int, tuple[int, int]] = {
    2: (1, -1),
    3: (1, 1),
    4: (-1, 1),
    5: (-1, -1),
}


def component_set(i: int, m: int, j: int, n: int) -> DistanceValueSet:
    """Offset family i over the gamma^-(4m+i) rescale of L_{n-j}.

    Only the m = 0 constants are tabulated; any other m raises
    UnsupportedConstants.
    """
    if i not in OFFSETS:
        raise DomainError("family index must be in 2..5")
    if m != 0:
        raise UnsupportedConstants("offset constants only tabulated for m = 0")
    level = n - j
    if level < 0:
        raise DomainError("component needs n - j >= 0")
    scale = GoldenValue.gamma_power(-(4 * m + i))
    pts = [Point(p.x * scale, p.y * scale) for p in ammann_chair(level)]
    cx, cy = OFFSETS[i]
    sx, sy = SIGN_PATTERNS[i]
    values = set()
    for p1 in pts:
        for p2 in pts:
            u = p1.x + p2.x - cx if sx > 0 else p1.x - p2.x - cx
            v = p1.y + p2.y - cy if sy > 0 else p1.y - p2.y - cy
            values.add(u * u + v * v)
    return DistanceValueSet(values, label="F%d(%d)" % (i, level))


@dataclass(slots=True)
class StackedDecomposition:
    n: int
    full: DistanceValueSet
    components: list[tuple[str, DistanceValueSet]]
    residual: DistanceValueSet
    spurious: DistanceValueSet

    def coverage(self) -> dict[str, float]:
        total = len(self.full)
        out = {}
        for name, comp in self.components:
            out[name] = len(comp.intersection(self.full)) / total
        out["union"] = 1.0 - len(self.residual) / total
        return out

    def to_json(self, include_values: bool = True) -> dict:
        cov = self.coverage()
        comps = []
        for name, comp in self.components:
            entry = {
                "name": name,
                "count": len(comp),
                "coverage": cov[name],
                "spurious": len(comp.difference(self.full)),
            }
            if include_values:
                entry["values"] = comp.sorted_floats()
            comps.append(entry)
        out = {
            "n": self.n,
            "full": {"count": len(self.full)},
            "components": comps,
            "residual": {"count": len(self.residual)},
            "spuriousTotal": len(self.spurious),
            "unionCoverage": cov["union"],
        }
        if include_values:
            out["full"]["values"] = self.full.sorted_floats()
            out["residual"]["values"] = self.residual.sorted_floats()
        return out


STACK_COMPONENT_NAMES = (
    "RHS(n-1)", "RHS(n-2)", "RHS2(n-2)", "RHS3(n-3)",
    "RHS4(n-4)", "RHS5(n-5)", "RHS(n-4)",
)


def stacked_decomposition(n: int) -> StackedDecomposition:
    """Seven-component stack approximating D(n), with residual/spurious
    bookkeeping.  Needs n >= 7 so every referenced level exists."""
    if n < 7:
        raise DomainError("stacked decomposition needs n >= 7")
    phi_inv = GoldenValue.phi_power(-1)
    comps = [
        ("RHS(n-1)", level_value_set(n - 1).scaled(phi_inv, label="RHS(n-1)")),
        ("RHS(n-2)", level_value_set(n - 2).scaled(phi_inv * phi_inv, label="RHS(n-2)")),
        ("RHS2(n-2)", component_set(2, 0, 2, n)),
        ("RHS3(n-3)", component_set(3, 0, 3, n)),
        ("RHS4(n-4)", component_set(4, 0, 4, n)),
        ("RHS5(n-5)", component_set(5, 0, 5, n)),
        ("RHS(n-4)", level_value_set(n - 4).scaled(GoldenValue.phi_power(-4),
                                                   label="RHS(n-4)")),
    ]
    full = level_value_set(n)
    covered = DistanceValueSet(label="covered")
    for _, comp in comps:
        covered = covered.union(comp)
    residual = full.difference(covered, label="residual(%d)" % n)
    spurious = covered.difference(full, label="spurious(%d)" % n)
    return StackedDecomposition(n, full, comps, residual, spurious)


_WORD_MAPS = {"L": MAP_LONG, "S": MAP_SHORT}


def word_set(word: str, n: int) -> PointSet:
    """Apply a map word to L_n, rightmost letter first: word_set("LS", k)
    is MAP_LONG(MAP_SHORT(L_k))."""
    if not word or any(ch not in _WORD_MAPS for ch in word):
        raise DomainError("word must be a nonempty string over {L, S}")
    pts = ammann_chair(n)
    out = PointSet(pts, label="%s|%d" % (word, n), step=n)
    for ch in reversed(word):
        m = _WORD_MAPS[ch]
        out = PointSet((m(p) for p in out), label=out.label, step=n)
    return out


WORD_CROSS_TERMS = (
    ("S", 2, "LL", 2),
    ("LS", 3, "SL", 3),
    ("SS", 4, "LSL", 4),
    ("LSS", 5, "SSL", 5),
    ("SSS", 6, "SSL", 5),
)


def word_cross_terms(n: int) -> dict[str, DistanceValueSet]:
    """The five map-word cross terms of the stack, as value sets.

    Keys look like "S(n-2)|LL(n-2)".  These are the constructive
    counterparts of the offset families; agreement between the two is
    measured (see jaccard), not assumed.
    """
    if n < 7:
        raise DomainError("word cross terms need n >= 7")
    out = {}
    for wa, ja, wb, jb in WORD_CROSS_TERMS:
        key = "%s(n-%d)|%s(n-%d)" % (wa, ja, wb, jb)
        out[key] = dset(word_set(wa, n - ja), word_set(wb, n - jb), label=key)
    return out


def jaccard(a: DistanceValueSet, b: DistanceValueSet) -> float:
    union = len(a.union(b))
    if union == 0:
        return 1.0
    return len(a.intersection(b)) / union


def residual_tail_profile(values: DistanceValueSet, edges: Sequence[float],
                          meta: Optional[dict] = None) -> Histogram:
    """Histogram of a value set's float images, for tail inspection."""
    return values.histogram(edges, meta=meta)
