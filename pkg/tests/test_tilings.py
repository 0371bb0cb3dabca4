"""Chair level sets, substitution models, lattice, orbit check."""

import pytest

from tilestat.errors import DepthExceeded, DomainError
from tilestat.geometry import Point, PointSet
from tilestat.golden import GoldenValue
from tilestat.tilings import (HECKE_GEN_1, HECKE_GEN_2, MAP_LONG, MAP_SHORT,
                              ammann_chair, ammann_chair2, ammann_chair_split,
                              chair3, hecke_orbit_check, integer_lattice)

_g = GoldenValue.gamma_power

# the six outline vertices, then the three level-1 additions
BASE_POINTS = [
    (0, 0), (_g(5), 0), (_g(5), _g(4)), (_g(3), _g(4)), (_g(3), _g(6)),
    (0, _g(6)),
]
LEVEL1_EXTRA = [(0, _g(2)), (_g(1), _g(2)), (_g(1), _g(4))]

# |L_n| for n = 0..12
LEVEL_COUNTS = [6, 9, 12, 18, 26, 40, 61, 95, 148, 234, 370, 590, 941]


def test_base_levels_exact():
    l0 = ammann_chair(0)
    assert l0 == PointSet(Point.of(x, y) for x, y in BASE_POINTS)
    l1 = ammann_chair(1)
    assert l1 == PointSet(Point.of(x, y)
                          for x, y in BASE_POINTS + LEVEL1_EXTRA)
    assert len(l0) == 6 and len(l1) == 9


def test_level_counts():
    for n, expected in enumerate(LEVEL_COUNTS):
        assert len(ammann_chair(n)) == expected


def test_deep_level_count():
    # grows to the documented 68,638 vertices at the cap
    assert len(ammann_chair(21)) == 68638


def test_recursion_is_the_two_map_union():
    for n in range(2, 11):
        short, long_ = ammann_chair_split(n)
        assert short.union(long_) == ammann_chair(n)
        # the halves overlap along the shared cut, so counts overshoot
        assert len(short) + len(long_) >= len(ammann_chair(n))


def test_split_halves_are_map_images():
    short, long_ = ammann_chair_split(5)
    assert short == PointSet(MAP_SHORT(p) for p in ammann_chair(3))
    assert long_ == PointSet(MAP_LONG(p) for p in ammann_chair(4))


def test_level_bbox():
    gx, gy = _g(5), _g(6)
    for n in range(0, 9):
        for p in ammann_chair(n):
            assert p.x.sign() >= 0 and p.y.sign() >= 0
            assert (p.x - gx).sign() <= 0 and (p.y - gy).sign() <= 0


def test_domain_errors():
    with pytest.raises(DomainError):
        ammann_chair(-1)
    with pytest.raises(DepthExceeded):
        ammann_chair(22)
    with pytest.raises(DomainError):
        ammann_chair_split(1)
    with pytest.raises(DomainError):
        integer_lattice(0)


def test_substitution_model_counts():
    assert len(ammann_chair2(0)) == 6
    assert len(ammann_chair2(1)) == 15
    assert len(ammann_chair2(6)) == 10369
    assert len(chair3(4)) == 18434


def test_integer_lattice():
    assert len(integer_lattice(2)) == 1
    assert len(integer_lattice(5)) == 10
    assert len(integer_lattice(10)) == 45
    for p in integer_lattice(6):
        x, y = p.x, p.y
        assert y.sign() > 0 and (x - y).sign() > 0 and (x - 6).sign() <= 0


def test_orbit_check_level1():
    report = hecke_orbit_check(1)
    assert report.level == 1 and report.search_depth == 6
    assert len(report.records) == 18  # 9 vectors x 2 generators
    assert report.found_count == 5
    assert report.fraction == pytest.approx(5 / 18)
    gens = {1: HECKE_GEN_1, 2: HECKE_GEN_2}
    for rec in report.records:
        if not rec.found:
            continue
        # g v = a gamma^p w, checked coefficientwise
        scale = GoldenValue.gamma_power(rec.p) * rec.a
        image = gens[rec.generator](rec.v)
        assert image.x == rec.w.x * scale
        assert image.y == rec.w.y * scale
        assert rec.m <= report.search_depth


def test_orbit_report_json():
    report = hecke_orbit_check(0, search_depth=3)
    data = report.to_json()
    assert data["total"] == len(data["records"]) == 12
    assert data["found"] == sum(1 for r in data["records"] if r["found"])
    for r in data["records"]:
        if r["found"]:
            assert {"a", "p", "m", "w"} <= set(r)
        else:
            assert "a" not in r and "w" not in r
