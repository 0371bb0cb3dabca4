"""Generalized planar Ulam sets for two independent starting vectors.

Members are nonnegative integer combinations a v0 + b v1, tracked by their
lattice coordinates (a, b).  Each step admits every sum of two distinct
current members that is not already a member, has exactly one such
representation, and has minimal norm among those candidates; exact ties
are admitted together.

Norms are exact: |a v0 + b v1|^2 is the integer quadratic form in the
Gram matrix of (v0, v1), a field element.  The generator walks lattice
points in increasing exact norm with one heap entry per column (norms
are monotone along a column because both vectors sit in the closed first
quadrant, so the Gram form has no negative entries).  Equal norms that
float rounding could split are regrouped by exact comparison inside a
small tolerance window.

Representation counts are not maintained incrementally.  Every
representation of a candidate uses two members of strictly smaller norm,
so by the time a lattice point is reached in norm order its count is
final and can be taken in one pass: count members u inside the candidate
box whose complement c - u is also a member, correct for the c = 2u
self-pairing, halve.  The membership test is a vectorized search against
the sorted member keys, which keeps long runs cheap.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DegenerateConfig, DomainError, EmptyInput
from .geometry import Point
from .golden import PHI, GoldenValue

_SHIFT = 32
_MASK = (1 << _SHIFT) - 1


def _key(a: int, b: int) -> int:
    return (a << _SHIFT) | b


@dataclass(frozen=True, slots=True)
class UlamConfig:
    v0: Point
    v1: Point
    label: str = "userdef-2d"
    seed: Optional[int] = None

    def __post_init__(self):
        for v in (self.v0, self.v1):
            if v.x.sign() < 0 or v.y.sign() < 0:
                raise DegenerateConfig("basis vectors must lie in the first quadrant")
            if v.norm2().is_zero():
                raise DegenerateConfig("basis vectors must be nonzero")
        cross = self.v0.x * self.v1.y - self.v0.y * self.v1.x
        if cross.is_zero():
            raise DegenerateConfig("basis vectors must be linearly independent")

    @classmethod
    def unit(cls) -> "UlamConfig":
        return cls(Point.of(1, 0), Point.of(0, 1), label="unit")

    @classmethod
    def golden(cls) -> "UlamConfig":
        return cls(Point.of(1, PHI), Point.of(PHI, 1), label="golden")

    @classmethod
    def random_2d(cls, seed: int) -> "UlamConfig":
        """Two uniform vectors from [0,1]^2 with dyadic coordinates of
        denominator 2^53, resampled while degenerate."""
        rng = random.Random(seed)
        den = 1 << 53

        def draw():
            return Point.of(Fraction(rng.getrandbits(53), den),
                            Fraction(rng.getrandbits(53), den))

        for _ in range(64):
            try:
                return cls(draw(), draw(), label="random-2d", seed=seed)
            except DegenerateConfig:
                continue
        raise DegenerateConfig("could not sample an independent basis")

    def gram(self) -> tuple[GoldenValue, GoldenValue, GoldenValue]:
        q00 = self.v0.norm2()
        q01 = self.v0.x * self.v1.x + self.v0.y * self.v1.y
        q11 = self.v1.norm2()
        return q00, q01, q11

    def position(self, a: int, b: int) -> Point:
        return Point(self.v0.x * a + self.v1.x * b, self.v0.y * a + self.v1.y * b)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "seed": self.seed,
            "v0": self.v0.to_json(),
            "v1": self.v1.to_json(),
        }


def quad_form(gram: tuple[GoldenValue, GoldenValue, GoldenValue],
              a: int, b: int) -> GoldenValue:
    q00, q01, q11 = gram
    return q00 * (a * a) + q01 * (2 * a * b) + q11 * (b * b)


@dataclass(slots=True)
class StepRecord:
    step: int
    coords: list[tuple[int, int]]
    norm2: Optional[GoldenValue]

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "coords": [list(c) for c in self.coords],
            "norm2": None if self.norm2 is None else self.norm2.to_json(),
        }


class UlamState:
    __slots__ = ("config", "members", "step_log", "steps_done",
                 "_gram", "_gram_float", "_rational", "_rat_gram",
                 "_ma", "_mb", "_dirty", "_arr_a", "_arr_b", "_keys_sorted",
                 "_heap", "_next_col")

    def __init__(self, config: UlamConfig):
        self.config = config
        self._gram = config.gram()
        q00, q01, q11 = self._gram
        self._gram_float = (float(q00), float(q01), float(q11))
        self._rational = all(q.is_rational() for q in self._gram)
        self._rat_gram = (q00.coeffs[0], q01.coeffs[0], q11.coeffs[0])
        self.members: dict[int, int] = {_key(1, 0): 0, _key(0, 1): 0}
        self._ma = [1, 0]
        self._mb = [0, 1]
        self._dirty = True
        self._arr_a = self._arr_b = self._keys_sorted = None
        self.step_log: list[StepRecord] = [StepRecord(0, [(0, 1), (1, 0)], None)]
        self.steps_done = 0
        self._heap: list[tuple[float, int, int]] = [(0.0, 0, 0)]
        self._next_col = 1

    def norm2_exact(self, a: int, b: int) -> GoldenValue:
        if self._rational:
            r00, r01, r11 = self._rat_gram
            return GoldenValue(r00 * (a * a) + r01 * (2 * a * b) + r11 * (b * b))
        return quad_form(self._gram, a, b)

    def norm2_float(self, a: int, b: int) -> float:
        f00, f01, f11 = self._gram_float
        return f00 * (a * a) + f01 * (2 * a * b) + f11 * (b * b)

    def _arrays(self):
        if self._dirty:
            self._arr_a = np.asarray(self._ma, dtype=np.int64)
            self._arr_b = np.asarray(self._mb, dtype=np.int64)
            self._keys_sorted = np.sort((self._arr_a << _SHIFT) | self._arr_b)
            self._dirty = False
        return self._arr_a, self._arr_b, self._keys_sorted

    def _rep_count(self, a: int, b: int) -> int:
        """Number of unordered pairs of distinct members summing to (a, b).
        Every such pair is already present (both parts have smaller norm),
        so this is a closed count, not a running one."""
        arr_a, arr_b, keys_sorted = self._arrays()
        mask = (arr_a <= a) & (arr_b <= b)
        if not mask.any():
            return 0
        comp = ((a - arr_a[mask]) << _SHIFT) | (b - arr_b[mask])
        idx = np.searchsorted(keys_sorted, comp)
        idx[idx == keys_sorted.size] = 0
        hits = int(np.count_nonzero(keys_sorted[idx] == comp))
        if a % 2 == 0 and b % 2 == 0 and _key(a // 2, b // 2) in self.members:
            hits -= 1
        return hits // 2

    def _scan_next_group(self, advance: bool = True):
        """Lattice points of the smallest exact norm the walk has not yet
        reached, as (norm, float norm, coords).  Advances past them unless
        told to peek."""
        heap = self._heap
        top = heap[0][0]
        eps = 1e-9 * (1.0 + top)
        while self.norm2_float(self._next_col, 0) <= top + eps:
            c = self._next_col
            heapq.heappush(heap, (self.norm2_float(c, 0), c, 0))
            self._next_col = c + 1
        top = heap[0][0]
        eps = 1e-9 * (1.0 + top)
        window = []
        while heap and heap[0][0] <= top + eps:
            window.append(heapq.heappop(heap))
        evaluated = [(f, a, b, self.norm2_exact(a, b)) for f, a, b in window]
        min_gv = evaluated[0][3]
        for item in evaluated[1:]:
            if (item[3] - min_gv).sign() < 0:
                min_gv = item[3]
        group = []
        min_f = None
        for f, a, b, gv in evaluated:
            if gv == min_gv:
                group.append((a, b))
                min_f = f if min_f is None else min(min_f, f)
                nxt = (self.norm2_float(a, b + 1), a, b + 1) if advance else (f, a, b)
                heapq.heappush(heap, nxt)
            else:
                heapq.heappush(heap, (f, a, b))
        group.sort()
        return min_gv, min_f, group

    def run(self, steps: int) -> None:
        if steps < 0:
            raise DomainError("step count must be nonnegative")
        target = self.steps_done + steps
        members = self.members
        while self.steps_done < target:
            gv, _f, coords = self._scan_next_group()
            batch = [(a, b) for a, b in coords
                     if _key(a, b) not in members and self._rep_count(a, b) == 1]
            if not batch:
                continue
            self.steps_done += 1
            for a, b in batch:
                members[_key(a, b)] = self.steps_done
                self._ma.append(a)
                self._mb.append(b)
            self._dirty = True
            self.step_log.append(StepRecord(self.steps_done, batch, gv))

    def frontier(self) -> tuple[GoldenValue, float]:
        """Smallest exact norm not yet decided; everything strictly below
        has been admitted or permanently rejected."""
        gv, f, _ = self._scan_next_group(advance=False)
        return gv, f

    def entry_step(self, a: int, b: int) -> Optional[int]:
        return self.members.get(_key(a, b))

    def member_coords(self) -> list[tuple[int, int, int]]:
        """(a, b, entry step) for every member, ordered by entry."""
        out = [(k >> _SHIFT, k & _MASK, s) for k, s in self.members.items()]
        out.sort(key=lambda t: (t[2], t[0], t[1]))
        return out

    def to_json(self, include_log: bool = True) -> dict:
        out = {
            "config": self.config.to_json(),
            "steps": self.steps_done,
            "members": [{"a": a, "b": b, "k": s} for a, b, s in self.member_coords()],
        }
        if include_log:
            out["stepLog"] = [r.to_json() for r in self.step_log]
        return out


def ulam_generate(config: UlamConfig, steps: int) -> UlamState:
    state = UlamState(config)
    state.run(steps)
    return state


def structure_predicate(a: int, b: int) -> bool:
    """Known lattice shape of these sets: the two boundary rays (n, 1) and
    (1, n), plus interior points with both coordinates odd and >= 3."""
    if a < 0 or b < 0:
        return False
    if a == 1 or b == 1:
        return True
    return a >= 3 and b >= 3 and a % 2 == 1 and b % 2 == 1


@dataclass(slots=True)
class StructureReport:
    steps: int
    frontier_norm_float: float
    checked: int
    mismatches: list[dict]

    def to_json(self) -> dict:
        return {
            "steps": self.steps,
            "frontierNorm": self.frontier_norm_float,
            "checked": self.checked,
            "mismatches": self.mismatches,
        }


def verify_structure(state: UlamState) -> StructureReport:
    """Compare membership with the structure predicate over the decided
    region: lattice points with exact norm strictly below the frontier."""
    fgv, ffloat = state.frontier()
    mismatches = []
    checked = 0
    a = 0
    while (state.norm2_exact(a, 0) - fgv).sign() < 0:
        b = 0
        while (state.norm2_exact(a, b) - fgv).sign() < 0:
            checked += 1
            expected = structure_predicate(a, b)
            actual = state.entry_step(a, b) is not None
            if expected != actual:
                mismatches.append({"a": a, "b": b, "expected": expected,
                                   "actual": actual})
            b += 1
        a += 1
    return StructureReport(state.steps_done, ffloat, checked, mismatches)


def segment_count_formula(n: int) -> int:
    """Number of members on the segment a + b = n + 1: two boundary points
    for even n, (n+1)/2 in total for odd n."""
    if n < 0:
        raise DomainError("segment index must be nonnegative")
    return 2 if n % 2 == 0 else (n + 1) // 2


def segment_points(state: UlamState, n: int) -> list[tuple[int, int, int]]:
    """(a, b, entry step) of members on the segment a + b = n + 1."""
    if n < 0:
        raise DomainError("segment index must be nonnegative")
    out = [(a, b, s) for a, b, s in state.member_coords() if a + b == n + 1]
    out.sort()
    return out


@dataclass(slots=True)
class SegmentRecord:
    n: int
    count: int
    expected: int
    complete: bool
    t_min: Optional[int]
    t_max: Optional[int]

    def to_json(self) -> dict:
        return {"n": self.n, "count": self.count, "expected": self.expected,
                "complete": self.complete, "tMin": self.t_min, "tMax": self.t_max}


def timing_series(state: UlamState) -> list[SegmentRecord]:
    """Entry-step summary per segment, n = 0 .. max observed."""
    by_n: dict[int, list[int]] = {}
    for a, b, s in state.member_coords():
        by_n.setdefault(a + b - 1, []).append(s)
    if not by_n:
        return []
    out = []
    for n in range(0, max(by_n) + 1):
        steps = by_n.get(n, [])
        expected = segment_count_formula(n)
        out.append(SegmentRecord(n, len(steps), expected,
                                 len(steps) == expected,
                                 min(steps) if steps else None,
                                 max(steps) if steps else None))
    return out


def quadratic_fit(ns: list[int], values: list[float]) -> tuple[float, float]:
    """Least-squares c for values ~ c n^2, with the fit's R^2."""
    if len(ns) < 2:
        raise EmptyInput("need at least two samples to fit")
    num = sum(v * n * n for n, v in zip(ns, values))
    den = sum(float(n) ** 4 for n in ns)
    c = num / den
    mean = sum(values) / len(values)
    ss_tot = sum((v - mean) ** 2 for v in values)
    ss_res = sum((v - c * n * n) ** 2 for n, v in zip(ns, values))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return c, r2


def min_magnitude_vector(config: UlamConfig, n: int):
    """Exact norm minimizers over the structure points of the segment
    a + b = n + 1, with the closed-form prediction.

    Prediction: both boundary points for even n; the midpoint
    ((n+1)/2)(v0 + v1) for n = 1 mod 4; its nearest structure point
    ((n+3)/2) v0 + ((n-1)/2) v1 for n = 3 mod 4.

    Returns (minimizers, prediction, float norm of the minimum).
    """
    if n < 2:
        raise DomainError("need n >= 2")
    gram = config.gram()
    total = n + 1
    cands = [(n, 1), (1, n)]
    if n % 2 == 1:
        cands.extend((a, total - a) for a in range(3, total - 2, 2))
    best: list[tuple[int, int]] = []
    best_norm: Optional[GoldenValue] = None
    for a, b in cands:
        q = quad_form(gram, a, b)
        if best_norm is None:
            best, best_norm = [(a, b)], q
            continue
        s = (q - best_norm).sign()
        if s < 0:
            best, best_norm = [(a, b)], q
        elif s == 0:
            best.append((a, b))
    if n % 2 == 0:
        prediction = [(1, n), (n, 1)]
    elif n % 4 == 1:
        h = (n + 1) // 2
        prediction = [(h, h)]
    else:
        h = (n - 1) // 2
        prediction = [(h + 2, h)]
    return sorted(best), prediction, float(best_norm)


def points_per_step_bound(config: UlamConfig, r: float) -> tuple[float, float]:
    """Closed-form cap on the batch size at probe radius r, plus its
    large-r limit 8 (|v0 + v1| + |v0|) / min(|v0|, |v1|)."""
    q00, q01, q11 = (float(q) for q in config.gram())
    n0, n1 = math.sqrt(q00), math.sqrt(q11)
    ns = math.sqrt(q00 + 2.0 * q01 + q11)
    radicand = r * r - 3.0 * q00 - 2.0 * q01
    if radicand < 0:
        # tolerate float slop at the domain boundary (r given as a
        # truncated decimal for sqrt(3), say), not a genuine shortfall
        if radicand < -1e-6 * max(r * r, 1.0):
            raise DomainError("probe radius too small: negative radicand")
        radicand = 0.0
    lam = math.sqrt(radicand) / ns
    v0 = (float(config.v0.x), float(config.v0.y))
    vs = (v0[0] + float(config.v1.x), v0[1] + float(config.v1.y))
    p3 = (vs[0] * (ns + r) / ns, vs[1] * (ns + r) / ns)
    p1 = (v0[0] + lam * vs[0], v0[1] + lam * vs[1])
    diff = math.hypot(p3[0] - p1[0], p3[1] - p1[1])
    mn = min(n0, n1)
    return 8.0 * diff / mn, 8.0 * (ns + n0) / mn


def empirical_max_per_step(state: UlamState) -> int:
    if state.steps_done == 0:
        raise EmptyInput("no steps run")
    return max(len(r.coords) for r in state.step_log[1:])


@dataclass(slots=True)
class FillOrderReport:
    violations: list[tuple[int, int, int]]
    fitted_c: Optional[float]
    r_squared: Optional[float]
    records: list[dict]

    def to_json(self) -> dict:
        return {
            "violations": [list(v) for v in self.violations],
            "fittedC": self.fitted_c,
            "rSquared": self.r_squared,
            "records": self.records,
        }


def fill_order_check(state: UlamState) -> FillOrderReport:
    """Check segments complete in order, and fit the count of points on
    later segments present at each completion step (quadratic in n)."""
    series = timing_series(state)
    complete = [rec for rec in series if rec.complete]
    by_n = {rec.n: rec for rec in complete}
    violations = []
    for rec in complete:
        nxt = by_n.get(rec.n + 1)
        if nxt is not None and rec.t_max > nxt.t_max:
            violations.append((rec.n, rec.t_max, nxt.t_max))
    coords = state.member_coords()
    records = []
    for rec in complete:
        later = sum(1 for a, b, s in coords
                    if a + b - 1 > rec.n and s <= rec.t_max)
        records.append({"n": rec.n, "completionStep": rec.t_max,
                        "laterPoints": later})
    fit_pts = [(p, v) for p, v in
               ((r["n"], r["laterPoints"]) for r in records) if p >= 1]
    if len(fit_pts) >= 2:
        c, r2 = quadratic_fit([p for p, _ in fit_pts], [v for _, v in fit_pts])
    else:
        c = r2 = None
    return FillOrderReport(violations, c, r2, records)
