"""Exact points, affine maps, substitution iteration, polygon tests."""

import random
from fractions import Fraction

import pytest

from tilestat.errors import DepthExceeded, DomainError, ParseError
from tilestat.geometry import (AffineMap, Point, PointSet, SubstitutionRule,
                               affine_apply, point_in_polygon, substitute)
from tilestat.golden import GAMMA, GoldenValue
from tilestat.tilings import (_CHAIR_PROTOTILE, AMMANN_CHAIR2_RULE,
                              ammann_chair2, chair3, square_grid)

_h = Fraction(1, 2)
_q = Fraction(1, 4)

# the four half-scale images of the L-tromino outline, by hand
CHAIR2_LEVEL1 = [
    (0, 0), (0, _h), (0, 1),
    (_q, _q), (_q, _h), (_q, 3 * _q),
    (_h, 0), (_h, _q), (_h, _h), (_h, 3 * _q), (_h, 1),
    (3 * _q, _q), (3 * _q, _h),
    (1, 0), (1, _h),
]


def _rand_point(rng) -> Point:
    return Point.of(Fraction(rng.randint(-8, 8), rng.randint(1, 5)),
                    Fraction(rng.randint(-8, 8), rng.randint(1, 5)))


def test_affine_basics():
    p = Point.of(Fraction(2, 3), 5)
    assert AffineMap.identity()(p) == p
    assert AffineMap.scaling(_h)(p) == Point.of(Fraction(1, 3), Fraction(5, 2))
    shift = AffineMap.of(1, 0, 0, 1, 3, -1)
    assert shift(p) == Point.of(Fraction(11, 3), 4)
    rot = AffineMap.of(0, -1, 1, 0)  # quarter turn
    assert rot(Point.of(1, 0)) == Point.of(0, 1)


def test_compose_matches_application_order():
    rng = random.Random(3)
    for _ in range(60):
        m1 = AffineMap.of(*(Fraction(rng.randint(-3, 3), rng.randint(1, 4))
                            for _ in range(6)))
        m2 = AffineMap.of(*(Fraction(rng.randint(-3, 3), rng.randint(1, 4))
                            for _ in range(6)))
        p = _rand_point(rng)
        assert m1.compose(m2)(p) == m1(m2(p))


def test_point_arithmetic_exact():
    a = Point.of(GAMMA, 1)
    b = Point.of(1, GAMMA)
    s = a + b
    assert s.x == s.y == GAMMA + 1
    assert (a - a).norm2().sign() == 0
    assert a.scaled(GAMMA).x == GAMMA * GAMMA


def test_pointset_dedup_and_equality():
    p = Point.of(_h, _h)
    s = PointSet([p, Point.of(Fraction(2, 4), Fraction(1, 2)), Point.of(0, 0)])
    assert len(s) == 2
    t = PointSet([Point.of(0, 0), p])
    assert s == t  # order-insensitive
    s.add(p)
    assert len(s) == 2


def test_pointset_json_round_trip():
    s = PointSet([Point.of(GAMMA, Fraction(1, 3)), Point.of(0, 1)],
                 label="demo", step=4)
    data = s.to_json()
    back = PointSet.from_json(data)
    assert back == s and back.label == "demo" and back.step == 4
    with pytest.raises(ParseError):
        PointSet.from_json({"label": "x"})
    with pytest.raises(ParseError):
        PointSet.from_json({"points": [{"x": 1}]})


def test_square_grid_counts_and_nesting():
    assert len(square_grid(1)) == 9
    assert len(square_grid(2)) == 25
    assert len(square_grid(3)) == 81
    g2 = square_grid(2)
    assert all(p in g2 for p in square_grid(1))


def test_chair2_level1_exact_set():
    expected = PointSet(Point.of(x, y) for x, y in CHAIR2_LEVEL1)
    assert ammann_chair2(1) == expected


def test_substitution_vertices_nest():
    lvl2 = ammann_chair2(2)
    assert all(p in lvl2 for p in ammann_chair2(1))
    c2 = chair3(2)
    assert all(p in c2 for p in chair3(1))


def test_chair3_small_counts():
    assert len(chair3(0)) == 6
    assert len(chair3(1)) == 30


def test_depth_cap_and_bad_depth():
    with pytest.raises(DepthExceeded):
        substitute(AMMANN_CHAIR2_RULE, 13)
    with pytest.raises(DomainError):
        substitute(AMMANN_CHAIR2_RULE, -1)


def test_rule_rejects_non_contracting_map():
    with pytest.raises(DomainError):
        SubstitutionRule("bad", _CHAIR_PROTOTILE, [AffineMap.identity()])
    with pytest.raises(DomainError):
        SubstitutionRule("thin", _CHAIR_PROTOTILE[:2], [AffineMap.scaling(_h)])
    with pytest.raises(DomainError):
        SubstitutionRule("empty", _CHAIR_PROTOTILE, [])


def test_point_in_polygon_l_shape():
    poly = _CHAIR_PROTOTILE
    assert point_in_polygon(Point.of(_q, _q), poly)
    assert not point_in_polygon(Point.of(3 * _q, 3 * _q), poly)  # notch
    assert point_in_polygon(Point.of(_h, 3 * _q), poly)  # boundary edge
    assert point_in_polygon(Point.of(0, 0), poly)  # vertex
    assert point_in_polygon(Point.of(_h, _h), poly)  # reflex corner
    assert not point_in_polygon(Point.of(2, 0), poly)
    assert not point_in_polygon(Point.of(0, Fraction(-1, 100)), poly)


def test_substituted_points_stay_in_prototile():
    poly = _CHAIR_PROTOTILE
    assert all(point_in_polygon(p, poly) for p in ammann_chair2(3))


def test_affine_apply_preserves_count_when_injective():
    s = square_grid(1)
    out = affine_apply(AffineMap.scaling(_h), s, label="scaled")
    assert len(out) == len(s) and out.label == "scaled"


def test_spectral_norm():
    assert AffineMap.scaling(_h).spectral_norm() == pytest.approx(0.5)
    assert not AffineMap.identity().is_contracting()
    assert AffineMap.of(0, -GoldenValue.gamma_power(-1),
                        GoldenValue.gamma_power(-1), 0).is_contracting()
