import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from convexdg.convex_shape import (
    BoundaryPoint,
    Homothet,
    Location,
    NonConvex,
    OriginNotInterior,
    PointNotOnBoundary,
    PreconditionViolated,
    TooFewVertices,
    arc_length,
    classify,
    cone_decomposition,
    distance,
    locate_boundary_point,
    preset,
    regular_polygon,
    upper_arc,
    validate_body,
)

SQUARE = preset("square")
TRI = validate_body([(2, 0), (-1, 1), (-1, -1)], (0, 0))
HEX = regular_polygon(6)

coord = st.fractions(min_value=-20, max_value=20, max_denominator=50)
point = st.tuples(coord, coord)
bodies = st.sampled_from([SQUARE, TRI, HEX, preset("pentagon"), preset("random-convex")])


class TestValidate:
    def test_cw_input_is_reordered(self):
        b = validate_body([(-1, -1), (-1, 1), (1, 1), (1, -1)], (0, 0))
        k = b.vertices.index(SQUARE.vertices[0])
        assert b.vertices[k:] + b.vertices[:k] == SQUARE.vertices

    def test_origin_outside(self):
        with pytest.raises(OriginNotInterior):
            validate_body(SQUARE.vertices, (2, 0))

    def test_origin_on_boundary(self):
        with pytest.raises(OriginNotInterior):
            validate_body(SQUARE.vertices, (1, 0))

    def test_reflex_vertex(self):
        with pytest.raises(NonConvex):
            validate_body([(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)], (1, F(1, 2)))

    def test_too_few(self):
        with pytest.raises(TooFewVertices):
            validate_body([(0, 0), (1, 0), (2, 0)], (1, 0))

    def test_collinear_vertices_merged(self):
        b = validate_body([(-1, -1), (0, -1), (1, -1), (1, 1), (-1, 1)], (0, 0))
        assert b.m == 4

    def test_rational_strings(self):
        b = validate_body([("-1", "-1"), ("1", "-1"), ("1", "1"), ("-1/1", "1")], ("0.25", "0"))
        assert b.origin == (F(1, 4), 0)


class TestDistance:
    def test_square_axis(self):
        assert distance(SQUARE, (0, 0), (2, 0)) == 2

    def test_zero(self):
        assert distance(TRI, (3, 7), (3, 7)) == 0

    def test_triangle_asymmetry(self):
        assert distance(TRI, (0, 0), (1, 0)) == F(1, 2)
        assert distance(TRI, (1, 0), (0, 0)) == 1

    @given(bodies, point, point, point)
    def test_triangle_inequality(self, b, x, y, z):
        assert distance(b, x, z) <= distance(b, x, y) + distance(b, y, z)

    @given(bodies, point, point, st.fractions(min_value=0, max_value=10, max_denominator=20))
    def test_homogeneity(self, b, x, y, s):
        z = (x[0] + s * (y[0] - x[0]), x[1] + s * (y[1] - x[1]))
        assert distance(b, x, z) == s * distance(b, x, y)

    @given(bodies, point, point, point)
    def test_translation(self, b, x, y, v):
        assert distance(b, (x[0] + v[0], x[1] + v[1]), (y[0] + v[0], y[1] + v[1])) == distance(b, x, y)

    @given(st.sampled_from([SQUARE, HEX, regular_polygon(8)]), point, point)
    def test_symmetric_bodies_are_symmetric(self, b, x, y):
        assert b.is_centrally_symmetric()
        assert distance(b, x, y) == distance(b, y, x)

    def test_triangle_not_symmetric(self):
        assert not TRI.is_centrally_symmetric()

    @given(bodies, point, point)
    def test_float_matches_exact(self, b, x, y):
        d = float(distance(b, x, y))
        df = float(b.gauge_f(np.array([float(y[0] - x[0]), float(y[1] - x[1])])))
        assert math.isclose(d, df, rel_tol=1e-12, abs_tol=1e-12)


class TestCones:
    def _form_at(self, forms, site, x):
        for c in forms:
            v = (x[0] - c.apex[0], x[1] - c.apex[1])
            ca = c.ray_a[0] * v[1] - c.ray_a[1] * v[0]
            cb = c.ray_b[0] * v[1] - c.ray_b[1] * v[0]
            if ca >= 0 and cb <= 0:
                return c.value(x)
        raise AssertionError("no cone contains x")

    def test_square_has_four(self):
        assert len(cone_decomposition(SQUARE, (0, 0))) == 4

    def test_hexagon_has_six(self):
        assert len(cone_decomposition(HEX, (0, 0))) == 6

    @given(bodies, point)
    def test_zero_at_apex(self, b, s):
        assert all(c.value(s) == 0 for c in cone_decomposition(b, s))

    @given(bodies, point, point)
    def test_forms_match_distance(self, b, s, x):
        assert self._form_at(cone_decomposition(b, s), s, x) == distance(b, x, s)

    def test_shared_rays_agree(self):
        forms = cone_decomposition(HEX, (1, 2))
        for k, c in enumerate(forms):
            nxt = forms[(k + 1) % len(forms)]
            x = (c.apex[0] + 3 * c.ray_b[0], c.apex[1] + 3 * c.ray_b[1])
            assert c.value(x) == nxt.value(x)


class TestClassify:
    H = Homothet((F(0), F(0)), F(1))

    def test_examples(self):
        assert classify(self.H, SQUARE, (1, 0)) is Location.BOUNDARY
        assert classify(self.H, SQUARE, (F(1, 2), 0)) is Location.INTERIOR
        assert classify(self.H, SQUARE, (3, 0)) is Location.EXTERIOR

    def test_point_homothet(self):
        h = Homothet((F(2), F(3)), F(0))
        assert classify(h, SQUARE, (2, 3)) is Location.BOUNDARY
        assert classify(h, SQUARE, (2, 4)) is Location.EXTERIOR

    @given(bodies, point, st.fractions(min_value=0, max_value=5, max_denominator=10), point)
    def test_boundary_iff_distance(self, b, c, lam, p):
        h = Homothet(c, lam)
        assert (classify(h, b, p) is Location.BOUNDARY) == (distance(b, c, p) == lam)


class TestArcs:
    H = Homothet((F(0), F(0)), F(1))

    def test_top_chain_of_square(self):
        a = locate_boundary_point(self.H, SQUARE, (1, 0))
        b = locate_boundary_point(self.H, SQUARE, (-1, 0))
        assert arc_length(self.H, SQUARE, a, b, ccw=True) == pytest.approx(4)

    def test_full_perimeter(self):
        a = locate_boundary_point(self.H, SQUARE, (1, 0))
        assert arc_length(self.H, SQUARE, a, a) == pytest.approx(8)

    def test_regular_64_half(self):
        b = regular_polygon(64)
        h = Homothet((F(0), F(0)), F(1))
        v = b.rel
        assert v[0][1] == 0 and v[32][1] == 0
        got = arc_length(h, b, BoundaryPoint(0, F(0)), BoundaryPoint(32, F(0)))
        # inscribed half-perimeter, 1.26e-3 short of pi; vertices are rationalised to 1/2000
        assert got == pytest.approx(64 * math.sin(math.pi / 64), abs=2e-6)
        assert abs(got - math.pi) < 1.5e-3

    def test_upper_arc_square(self):
        axis = ((0, 0), (1, 0))
        assert upper_arc(self.H, SQUARE, (-1, 0), (1, 0), axis) == pytest.approx(4)
        assert upper_arc(self.H, SQUARE, (1, 1), (1, 1), axis) == 0

    def test_upper_arc_rejects_low_point(self):
        with pytest.raises(PreconditionViolated):
            upper_arc(self.H, SQUARE, (0, -1), (1, 0), ((0, 0), (1, 0)))

    def test_not_on_boundary(self):
        with pytest.raises(PointNotOnBoundary):
            locate_boundary_point(self.H, SQUARE, (F(1, 2), 0))

    @given(st.sampled_from([SQUARE, HEX, regular_polygon(12)]),
           st.lists(st.fractions(min_value=0, max_value=1, max_denominator=64), min_size=3, max_size=3, unique=True))
    def test_upper_arc_additive(self, b, ts):
        # three points on the upper half, ordered from right to left
        h = Homothet((F(1), F(2)), F(3))
        m = b.m
        half = [k for k in range(m) if b.rel[k][1] >= 0 and b.rel[(k + 1) % m][1] >= 0]
        assume(half)
        pts = []
        for t in sorted(ts):
            pos = t * len(half)
            k = min(int(pos), len(half) - 1)
            bp = BoundaryPoint(half[k], min(pos - k, F(1)))
            a, c = b.rel[bp.edge_index], b.rel[(bp.edge_index + 1) % m]
            pts.append((h.center[0] + h.scale * (a[0] + bp.t * (c[0] - a[0])),
                        h.center[1] + h.scale * (a[1] + bp.t * (c[1] - a[1]))))
        axis = (h.center, (F(1), F(0)))
        x, y, z = pts
        assert upper_arc(h, b, x, y, axis) + upper_arc(h, b, y, z, axis) == pytest.approx(
            upper_arc(h, b, x, z, axis), rel=1e-12, abs=1e-12)


def test_gauge_prefilter_agrees_with_full_max():
    b = regular_polygon(64)
    rng = np.random.default_rng(5)
    for _ in range(300):
        v = (F(int(rng.integers(-10**6, 10**6)), 997), F(int(rng.integers(-10**6, 10**6)), 991))
        assert b.gauge(v) == max(g[0] * v[0] + g[1] * v[1] for g in b.forms)
