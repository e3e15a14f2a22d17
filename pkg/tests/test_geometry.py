import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from normdiag import GaussianRational, VertexSet, distance_to_X, gq, parse_rational
from normdiag.geometry import (
    ConvexityError,
    GeometryError,
    OutsidePolygonError,
    check_poly_distance_bounds,
    cross,
    vanishing_poly,
)

from strategies import THREE, TWO, UNIT_SQUARE, gaussians, random_point, random_quadrilateral


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("0.1") == Fraction(1, 10)
    assert parse_rational(-2) == -2
    assert parse_rational(0.5) == Fraction(1, 2)
    with pytest.raises((TypeError, ValueError)):
        parse_rational(True)
    with pytest.raises((TypeError, ValueError)):
        parse_rational("1/0")


def test_gaussian_str_and_json():
    z = gq(Fraction(1, 2), Fraction(-1, 4))
    assert str(z) == "1/2-1/4i"
    assert str(gq(1, 1)) == "1+1i"
    assert z.to_json() == {"re": "1/2", "im": "-1/4"}
    assert GaussianRational.coerce({"re": "1/2", "im": "-1/4"}) == z


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == 0
    assert (a * b).abs2() == a.abs2() * b.abs2()
    if b:
        assert (a / b) * b == a
    assert complex(a * b) == pytest.approx(complex(a) * complex(b), abs=1e-9)


def test_vertexset_rejects_duplicates_and_singletons():
    with pytest.raises(GeometryError):
        VertexSet.of(0)
    with pytest.raises(GeometryError):
        VertexSet.of(0, 1, 0)


def test_delta_and_radius():
    assert THREE.delta2 == 1
    assert THREE.radius2 == 1
    assert UNIT_SQUARE.radius == pytest.approx(math.sqrt(2))


def _extreme_by_triangles(X):
    # a point is non-extreme iff it lies in a closed triangle (or segment) of the others
    pts = X.vertices
    bad = set()
    for k, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != k]
        for a, b in itertools.combinations(others, 2):
            if cross(a, b, p) == 0 and min(a.re, b.re) <= p.re <= max(a.re, b.re) \
                    and min(a.im, b.im) <= p.im <= max(a.im, b.im):
                bad.add(k)
        for a, b, c in itertools.combinations(others, 3):
            s = [cross(a, b, p), cross(b, c, p), cross(c, a, p)]
            if all(x >= 0 for x in s) or all(x <= 0 for x in s):
                bad.add(k)
    return bad


def test_convexity_matches_triangle_oracle():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(3, 6)
        pts = set()
        while len(pts) < n:
            pts.add(gq(rng.randint(-3, 3), rng.randint(-3, 3)))
        X = VertexSet(tuple(pts))
        bad = _extreme_by_triangles(X)
        assert X.is_convex_position() == (not bad)
        if bad:
            with pytest.raises(ConvexityError):
                X.hull


def test_collinear_rejected():
    X = VertexSet.of(0, Fraction(1, 2), 1)
    with pytest.raises(ConvexityError):
        X.hull


def test_hull_is_ccw_from_vertex_zero():
    X = VertexSet.of(0, gq(0, 1), gq(1, 1), 1)
    h = X.hull
    assert h[0] == 0 and sorted(h) == [0, 1, 2, 3]
    for i in range(4):
        assert cross(X[h[i]], X[h[(i + 1) % 4]], X[h[(i + 2) % 4]]) > 0


def test_contains_and_separating_edge():
    assert THREE.contains(gq(Fraction(1, 3), Fraction(1, 3)))
    assert THREE.contains(gq(Fraction(1, 2), Fraction(1, 2)))  # boundary
    z = gq(1, 1)
    assert not THREE.contains(z)
    assert THREE.separating_edge(z) is not None
    with pytest.raises(OutsidePolygonError) as info:
        THREE.require_contains(z)
    assert info.value.edge is not None


def test_distance_examples():
    assert distance_to_X(THREE[1], THREE).value == 0
    d = distance_to_X(Fraction(3, 10), TWO)
    assert d.squared == Fraction(9, 100) and d.value == pytest.approx(0.3)
    d = distance_to_X(gq(Fraction(1, 2), Fraction(1, 2)), THREE)
    assert d.squared == Fraction(1, 2)
    assert d.value == pytest.approx(math.sqrt(2) / 2)


@given(gaussians, st.permutations(range(4)))
def test_distance_permutation_invariant(z, perm):
    Y = VertexSet(tuple(UNIT_SQUARE[k] for k in perm))
    brute = min((z - v).abs2() for v in UNIT_SQUARE)
    assert distance_to_X(z, Y).squared == brute == distance_to_X(z, UNIT_SQUARE).squared


def test_vanishing_poly_against_sympy():
    s = sympy.Symbol("s")
    for X in (TWO, THREE, UNIT_SQUARE):
        poly = sympy.expand(sympy.prod([s - sympy.Rational(v.re) - sympy.I * sympy.Rational(v.im) for v in X]))
        for z in (gq(Fraction(1, 2), Fraction(1, 2)), gq(Fraction(1, 3), Fraction(-2, 7)), X[0]):
            val = sympy.expand(poly.subs(s, sympy.Rational(z.re) + sympy.I * sympy.Rational(z.im)))
            got = vanishing_poly(z, X)
            assert sympy.Rational(got.re) == sympy.re(val)
            assert sympy.Rational(got.im) == sympy.im(val)
    assert vanishing_poly(Fraction(1, 2), TWO) == Fraction(-1, 4)


def test_poly_distance_bound_examples():
    rep = check_poly_distance_bounds(THREE[0], THREE)
    assert rep.all_hold
    rep = check_poly_distance_bounds(Fraction(1, 10), TWO)
    assert rep.abs_f == pytest.approx(0.09)
    assert rep.lower.holds and rep.lower.rhs == pytest.approx(0.05)


@pytest.mark.parametrize("X", [TWO, THREE, UNIT_SQUARE], ids=["two", "three", "square"])
def test_poly_distance_bounds_sampled(X):
    rng = random.Random(5)
    R = X.radius
    lower_seen = upper_seen = 0
    for _ in range(10_000):
        r = 2 * R * math.sqrt(rng.random())
        th = rng.uniform(0, 2 * math.pi)
        if rng.random() < 0.5:
            base = X[rng.randrange(X.n)]
            r = X.delta / 2 * math.sqrt(rng.random())
            z = gq(base.re + Fraction(r * math.cos(th)).limit_denominator(10**6),
                   base.im + Fraction(r * math.sin(th)).limit_denominator(10**6))
        else:
            z = gq(Fraction(r * math.cos(th)).limit_denominator(10**6),
                   Fraction(r * math.sin(th)).limit_denominator(10**6))
        rep = check_poly_distance_bounds(z, X)
        assert rep.all_hold, (z, rep)
        lower_seen += rep.lower is not None
        upper_seen += rep.upper is not None
    assert lower_seen > 1000 and upper_seen > 1000


def test_random_points_lie_in_polygon():
    rng = random.Random(2)
    for _ in range(20):
        X = random_quadrilateral(rng)
        assert X.is_convex_position()
        for _ in range(20):
            assert X.contains(random_point(rng, X))
