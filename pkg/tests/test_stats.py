"""Direction series, gaps, histograms, pair correlation, KS."""

import math
import random
from fractions import Fraction

import pytest

from tilestat.errors import (DomainError, EmptyInput, ParseError,
                             RangeViolation)
from tilestat.geometry import Point, PointSet
from tilestat.stats import (DirectionSeries, Histogram, build_edges,
                            directions, equidistribution_stat,
                            normalized_gaps, pair_correlation,
                            pair_value_range, poisson_reference)
from tilestat.tilings import ammann_chair, integer_lattice


def _pset(coords, label="t"):
    return PointSet((Point.of(x, y) for x, y in coords), label=label)


def test_directions_small_lattice():
    d = directions(integer_lattice(3))
    assert d.kind == "slope"
    assert d.values == [pytest.approx(1 / 3), pytest.approx(1 / 2),
                        pytest.approx(2 / 3)]
    assert d.source_count == 3 and d.excluded_vertical == 0


def test_directions_dedupe():
    d = directions(integer_lattice(5), dedupe=True)
    assert d.source_count == 10  # 2/4 collapses into 1/2
    assert len(d.values) == 9
    assert len(set(d.values)) == 9


def test_directions_vertical_and_origin():
    s = _pset([(0, 0), (0, 1), (1, 1), (2, 2)])
    d = directions(s)
    assert d.values == [1.0, 1.0]
    assert d.excluded_vertical == 1 and d.source_count == 2
    a = directions(s, kind="angle")
    assert a.values == [pytest.approx(math.pi / 4)] * 2 + [math.pi / 2]
    assert a.source_count == 3
    with pytest.raises(DomainError):
        directions(s, kind="bearing")


def test_normalized_gaps_hand_example():
    d = DirectionSeries("slope", [0.0, 0.25, 1.0], source_count=4)
    g = normalized_gaps(d)
    assert g.gaps == [1.0, 3.0] and g.normalization == 4
    g2 = normalized_gaps(d, use_value_count=True)
    assert g2.gaps == [0.75, 2.25] and g2.normalization == 3
    assert g2.to_json()["minGap"] == 0.75
    with pytest.raises(EmptyInput):
        normalized_gaps(DirectionSeries("slope", [1.0], source_count=1))


def test_farey_calibration_against_direct_enumeration():
    d = directions(integer_lattice(300), dedupe=True)
    g = normalized_gaps(d, use_value_count=True)
    fracs = sorted(Fraction(p, q) for q in range(2, 301)
                   for p in range(1, q) if math.gcd(p, q) == 1)
    assert len(fracs) == len(d.values)
    min_gap = min(b - a for a, b in zip(fracs, fracs[1:]))
    assert min_gap == Fraction(1, 299 * 300)
    assert min(g.gaps) == pytest.approx(float(min_gap * len(fracs)), rel=1e-9)
    ref = 3 / math.pi ** 2
    assert abs(min(g.gaps) - ref) / ref < 0.10


def test_pair_correlation_unit_square():
    square = _pset([(0, 0), (1, 0), (0, 1), (1, 1)])
    h = pair_correlation(square, edges=[0.0, 1.25, 1.75])
    assert h.counts == [4, 2]
    assert h.total == 6 and h.overflow == 0
    assert h.check_conservation()


def _brute_histogram(ps, mode, scale, edges):
    h = Histogram(edges)
    pts = [p.to_float() for p in ps]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dx = pts[j][0] - pts[i][0]
            dy = pts[j][1] - pts[i][1]
            d2 = dx * dx + dy * dy
            v = math.sqrt(d2) if mode == "distance" else d2
            if scale != 1.0:
                v = v * scale
            h.add(v)
    return h


@pytest.mark.parametrize("ps,mode,scale,edges", [
    (integer_lattice(20), "distance", 1.0, [0.0, 5.0, 10.0, 20.0, 30.0]),
    (integer_lattice(32), "distance", 0.25, [0.0, 2.0, 4.0, 8.0]),
    (ammann_chair(4), "squaredDistance", 1.0, [0.0, 5.0, 15.0, 40.0]),
    (ammann_chair(5), "distance", 2.0, [1.0, 4.0, 9.0]),
])
def test_pair_correlation_matches_brute_force(ps, mode, scale, edges):
    assert len(ps) <= 500
    fast = pair_correlation(ps, mode=mode, scale=scale, edges=edges)
    slow = _brute_histogram(ps, mode, scale, edges)
    assert fast.counts == slow.counts
    assert fast.overflow == slow.overflow
    assert fast.total == slow.total == len(ps) * (len(ps) - 1) // 2


def test_pair_correlation_threaded_merge_is_deterministic(monkeypatch):
    ps = integer_lattice(25)
    edges = [0.0, 4.0, 9.0, 40.0]
    serial = pair_correlation(ps, edges=edges)
    monkeypatch.setenv("TILESTAT_THREADS", "4")
    threaded = pair_correlation(ps, edges=edges)
    assert serial.counts == threaded.counts
    assert serial.overflow == threaded.overflow


def test_pair_correlation_errors():
    with pytest.raises(DomainError):
        pair_correlation(integer_lattice(3), mode="chebyshev",
                         edges=[0.0, 1.0])
    with pytest.raises(EmptyInput):
        pair_correlation(_pset([(1, 1)]), edges=[0.0, 1.0])


def test_pair_value_range():
    square = _pset([(0, 0), (1, 0), (0, 1), (1, 1)])
    lo, hi = pair_value_range(square)
    assert lo == pytest.approx(1.0) and hi == pytest.approx(math.sqrt(2))
    lo2, hi2 = pair_value_range(square, mode="squaredDistance", scale=3.0)
    assert lo2 == pytest.approx(3.0) and hi2 == pytest.approx(6.0)
    with pytest.raises(EmptyInput):
        pair_value_range(_pset([(0, 0)]))


def test_build_edges():
    assert build_edges("0,1,2.5") == [0.0, 1.0, 2.5]
    assert build_edges("1:3:4") == [1.0, 1.5, 2.0, 2.5, 3.0]
    assert build_edges("auto:4", [0.0, 2.0]) == [0.0, 0.5, 1.0, 1.5, 2.0]
    # degenerate data widens to one unit
    assert build_edges("auto:2", [3.0, 3.0]) == [3.0, 3.5, 4.0]
    with pytest.raises(EmptyInput):
        build_edges("auto:3", [])
    for bad in ("", "auto:0", "3:1:4", "1:2", "edges"):
        with pytest.raises((DomainError, EmptyInput)):
            build_edges(bad, [0.0, 1.0])


def test_histogram_binning_rules():
    h = Histogram([0.0, 1.0, 2.0])
    h.add_many([0.0, 0.5, 1.0, 2.0, 2.5, -0.1])
    assert h.counts == [2, 2]  # 2.0 closes the last bin
    assert h.overflow == 2
    assert h.total == 6 and h.check_conservation()
    assert h.bin_index(2.0) == 1 and h.bin_index(2.0001) == -1


def test_histogram_merge_associative():
    rng = random.Random(9)
    edges = [0.0, 1.0, 2.0, 4.0]
    parts = []
    for _ in range(3):
        h = Histogram(edges)
        h.add_many(rng.uniform(0, 5) for _ in range(200))
        parts.append(h)
    left = parts[0].merge(parts[1]).merge(parts[2])
    right = parts[0].merge(parts[1].merge(parts[2]))
    assert left.counts == right.counts
    assert left.total == right.total == 600
    assert left.overflow == right.overflow
    with pytest.raises(DomainError):
        parts[0].merge(Histogram([0.0, 1.0]))


def test_histogram_json_round_trip():
    h = Histogram.from_values([0.2, 0.8, 1.5], [0.0, 1.0, 2.0],
                              meta={"label": "x"})
    back = Histogram.from_json(h.to_json())
    assert back.counts == h.counts and back.edges == h.edges
    assert back.total == h.total and back.meta == h.meta
    with pytest.raises(ParseError):
        Histogram.from_json({"edges": [0.0, 1.0]})
    with pytest.raises(DomainError):
        Histogram([1.0, 1.0])
    with pytest.raises(DomainError):
        Histogram([0.0, 1.0], counts=[1, 2, 3])


def test_densities_normalize():
    h = Histogram.from_values([0.1, 0.4, 0.6, 1.4], [0.0, 0.5, 1.0, 2.0])
    mass = sum(d * w for d, w in zip(
        h.densities(), (0.5, 0.5, 1.0)))
    assert mass == pytest.approx(1.0)


def test_ks_uniform_grid():
    n = 50
    vals = [i / n for i in range(1, n + 1)]
    assert equidistribution_stat(vals, 0.0, 1.0) == pytest.approx(1 / n)
    with pytest.raises(RangeViolation):
        equidistribution_stat([0.5, 1.5], 0.0, 1.0)
    with pytest.raises(DomainError):
        equidistribution_stat([0.5], 1.0, 0.0)
    with pytest.raises(EmptyInput):
        equidistribution_stat([], 0.0, 1.0)


def test_ks_on_farey_slopes_is_tiny():
    d = directions(integer_lattice(120), dedupe=True)
    stat = equidistribution_stat(d, 0.0, 1.0)
    assert stat < 0.02


def test_poisson_reference_values():
    assert poisson_reference(0.0) == 1.0
    assert poisson_reference(1.0) == pytest.approx(math.exp(-1))
    with pytest.raises(DomainError):
        poisson_reference(-0.5)


def test_poisson_gap_survival():
    # seeded i.i.d. uniform sample: normalized gap survival should track
    # exp(-t) within 3 standard errors
    n = 100_000
    rng = random.Random(20260822)
    vals = sorted(rng.random() for _ in range(n))
    gaps = [n * (b - a) for a, b in zip(vals, vals[1:])]
    m = len(gaps)
    for t in (0.5, 1.0, 2.0):
        p_ref = math.exp(-t)
        p_hat = sum(1 for g in gaps if g > t) / m
        se = math.sqrt(p_ref * (1 - p_ref) / m)
        assert abs(p_hat - p_ref) <= 3 * se, (t, p_hat, p_ref, se)
