import dataclasses
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexdg.convex_shape import Homothet, distance, preset
from convexdg.delaunay import (
    CoincidentSites,
    PieceKind,
    bisector,
    build_delaunay,
    domination_intervals,
    edge_exists,
    edge_test,
    edge_test_exact,
    is_connected,
    make_sites,
    planarity_check,
    verify_witness,
)
from convexdg.exact import on_segment
from convexdg.generators import generate_sites
from convexdg.oracle import ResolutionTooLow, sampled_voronoi_oracle, star_shaped_violations

SQUARE = preset("square")
TRI = preset("equilateral-triangle")
PENT = preset("pentagon")
ALL = [SQUARE, TRI, PENT, preset("random-convex"), preset("regular-64")]

# reference edge sets, each confirmed against the sampled oracle at resolution 1024
FROZEN = {
    ("square", "uniform", 8, 3): ((0, 2), (0, 3), (0, 4), (0, 7), (1, 4), (1, 5), (1, 6), (2, 4), (2, 7),
                                  (3, 4), (3, 6), (4, 6), (5, 6)),
    ("square", "cocircular", 8, 3): ((0, 2), (0, 4), (0, 6), (0, 7), (1, 5), (1, 6), (2, 4), (3, 5), (3, 6),
                                     (3, 7), (4, 6), (5, 6), (6, 7)),
    ("square", "collinear", 8, 3): ((0, 1), (0, 5), (1, 2), (2, 6), (3, 6), (4, 7), (5, 7)),
    ("square", "grid", 8, 3): ((0, 1), (0, 2), (0, 3), (1, 4), (2, 3), (2, 5), (3, 4), (3, 6), (4, 7),
                               (5, 6), (6, 7)),
    ("pentagon", "uniform", 10, 11): ((0, 1), (0, 2), (0, 3), (0, 4), (0, 7), (0, 9), (1, 2), (1, 7), (1, 9),
                                      (2, 9), (3, 4), (3, 7), (4, 6), (4, 8), (4, 9), (5, 8), (5, 9), (6, 8),
                                      (8, 9)),
}

small = st.integers(-30, 30).map(F)
pt = st.tuples(small, small)


def _piece_points(pc):
    ts = [F(0), F(1, 3), F(1, 2), F(1)] if pc.bounded else [F(0), F(1), F(7, 2), F(40)]
    return [pc.at(t) for t in ts]


class TestSites:
    def test_lex_order(self):
        s = make_sites([(1, 0), (0, 5), (0, 1)])
        assert s.lex_order == (2, 1, 0)
        assert s.rank == (2, 1, 0)

    def test_duplicates(self):
        with pytest.raises(CoincidentSites):
            make_sites([(1, 1), (1, 1)])


class TestBisector:
    def test_square_horizontal_pair(self):
        b = bisector(SQUARE, (-1, 0), (1, 0))
        for pc in b.pieces:
            for x in _piece_points(pc):
                assert distance(SQUARE, x, (-1, 0)) == distance(SQUARE, x, (1, 0))
        # the part between the tie quadrants is the segment x1 = 0, |x2| <= 1
        curve = [pc for pc in b.pieces if pc.kind is PieceKind.CURVE]
        assert curve and all(pc.start[0] == 0 and pc.direction[0] == 0 for pc in curve)

    def test_square_diagonal_pair_sampled(self):
        b = bisector(SQUARE, (0, 0), (2, 2))
        n = 0
        for pc in b.pieces:
            for k in range(500):
                t = F(k, 499) if pc.bounded else F(k, 5)
                x = pc.at(t)
                assert distance(SQUARE, x, (0, 0)) == distance(SQUARE, x, (2, 2))
                assert pc.lam0 + t * pc.dlam == distance(SQUARE, x, (0, 0))
                n += 1
        assert n >= 1000

    @given(pt, pt)
    def test_triangle_connected_and_exact(self, p, q):
        if p == q:
            return
        b = bisector(TRI, p, q)
        assert b.pieces
        for a, c in zip(b.pieces, b.pieces[1:]):
            if a.bounded:
                assert a.at(1) == c.start
        for pc in b.pieces:
            for x in _piece_points(pc):
                assert distance(TRI, x, p) == distance(TRI, x, q)

    def test_coincident(self):
        with pytest.raises(CoincidentSites):
            bisector(SQUARE, (0, 0), (0, 0))


class TestEdges:
    def test_two_sites(self):
        s = make_sites([(0, 0), (3, 1)])
        w = edge_exists(SQUARE, s, 0, 1)
        assert w is not None
        assert verify_witness(SQUARE, s, (0, 1), w)
        assert distance(SQUARE, w.center, (0, 0)) == distance(SQUARE, w.center, (3, 1)) == w.scale

    def test_large_triangle(self):
        s = make_sites([(0, 0), (100, 10), (40, 90)])
        assert build_delaunay(SQUARE, s).edges == ((0, 1), (0, 2), (1, 2))

    @pytest.mark.parametrize("body", ALL, ids=lambda b: str(b.m))
    def test_collinear_middle_blocks(self, body):
        s = make_sites([(0, 0), (F(5, 2), F(5, 4)), (10, 5)])
        assert edge_exists(body, s, 0, 2) is None
        assert domination_intervals(body, s, 0, 2)

    def test_single_site(self):
        g = build_delaunay(SQUARE, make_sites([(1, 2)]))
        assert g.edges == ()

    @pytest.mark.parametrize("body", ALL[:3], ids=["square", "triangle", "pentagon"])
    def test_collinear_path(self, body):
        s = make_sites([(3 * k, 2 * k) for k in range(8)])
        assert build_delaunay(body, s).edges == tuple((k, k + 1) for k in range(7))

    @pytest.mark.parametrize("key", sorted(FROZEN))
    def test_frozen(self, key):
        shape, gen, n, seed = key
        body = preset(shape)
        assert build_delaunay(body, generate_sites(gen, n, seed, body=body)).edges == FROZEN[key]

    @settings(max_examples=25)
    @given(st.sampled_from(ALL[:4]), st.integers(0, 10**6), st.sampled_from(["uniform", "cocircular", "grid"]))
    def test_float_path_matches_exact(self, body, seed, gen):
        s = generate_sites(gen, 7, seed, body=body)
        for i in range(7):
            for j in range(i + 1, 7):
                assert edge_test(body, s, i, j).exists == edge_test_exact(body, s, i, j).exists


class TestOracle:
    @pytest.mark.parametrize("res", [64, 128, 256])
    def test_two_sites(self, res):
        s = make_sites([(1, 1), (4, 2)])
        assert sampled_voronoi_oracle(PENT, s, res).edges == {(0, 1)}

    def test_low_resolution(self):
        with pytest.raises(ResolutionTooLow):
            sampled_voronoi_oracle(SQUARE, make_sites([(0, 0), (1, 1)]), 32)

    @settings(max_examples=20)
    @given(st.sampled_from(ALL[:4]), st.integers(0, 10**6))
    def test_random_triples_match(self, body, seed):
        s = generate_sites("uniform", 3, seed, body=body)
        g = build_delaunay(body, s)
        assert set(g.edges) == sampled_voronoi_oracle(body, s, 512).edges
        assert len(g.edges) >= 2

    def test_triple_without_triangle(self):
        # the middle site dominates the whole bisector of the outer two under the square metric
        s = generate_sites("uniform", 3, 85, body=SQUARE)
        assert build_delaunay(SQUARE, s).edges == ((0, 1), (0, 2))
        assert sampled_voronoi_oracle(SQUARE, s, 1024).edges == {(0, 1), (0, 2)}

    @settings(max_examples=12)
    @given(st.sampled_from(ALL[:4]), st.integers(0, 10**6), st.integers(4, 7),
           st.sampled_from(["uniform", "collinear", "cocircular", "clustered", "cohomothetic"]))
    def test_small_sets_match(self, body, seed, n, gen):
        s = generate_sites(gen, n, seed, body=body)
        assert set(build_delaunay(body, s).edges) == sampled_voronoi_oracle(body, s, 1024).edges

    @pytest.mark.parametrize("body", ALL[:4], ids=["square", "triangle", "pentagon", "random"])
    def test_star_shaped_cells(self, body):
        s = generate_sites("uniform", 9, 2, body=body)
        assert star_shaped_violations(body, s, resolution=128) == 0


class TestCertificates:
    def _instance(self, body=SQUARE, n=25, seed=1):
        s = generate_sites("uniform", n, seed, body=body)
        return s, build_delaunay(body, s)

    def test_planar_and_connected(self):
        for body in ALL[:4]:
            s, g = self._instance(body)
            assert planarity_check(g).ok
            assert is_connected(g)

    def test_injected_crossing(self):
        s, g = self._instance()
        P = s.points
        # a non-edge that crosses some existing edge
        from convexdg.exact import segments_intersect

        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                if g.has_edge(i, j):
                    continue
                if any(segments_intersect(P[i], P[j], P[a], P[b]) for a, b in g.edges if not {a, b} & {i, j}):
                    bad = dataclasses.replace(g, edges=tuple(sorted(g.edges + ((i, j),))))
                    res = planarity_check(bad)
                    assert not res.ok and res.violation is not None
                    assert (i, j) in res.violation
                    return
        pytest.fail("no crossing candidate found")

    def test_witnesses_hold(self):
        for body in ALL:
            s, g = self._instance(body, n=20)
            assert all(verify_witness(body, s, e, g.witnesses[e]) for e in g.edges)

    def test_inflated_witness_fails(self):
        s, g = self._instance(n=40)
        bad = 0
        for e in g.edges:
            w = g.witnesses[e]
            big = Homothet(w.center, 2 * w.scale)
            bad += not verify_witness(SQUARE, s, e, big)
        assert bad == len(g.edges)

    def test_no_site_inside_an_edge(self):
        for body in ALL[:4]:
            for gen in ("collinear", "grid", "uniform"):
                s = generate_sites(gen, 12, 5, body=body)
                g = build_delaunay(body, s)
                for a, b in g.edges:
                    assert not any(on_segment(s.points[r], s.points[a], s.points[b], open_=True)
                                   for r in range(len(s)) if r not in (a, b))


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(2, 9), st.sampled_from(["uniform", "cocircular", "grid", "collinear"]))
def test_origin_independence(seed, n, gen):
    s = generate_sites(gen, n, seed, body=SQUARE)
    moved = SQUARE.with_origin((F(3, 10), F(1, 10)))
    assert build_delaunay(SQUARE, s).edges == build_delaunay(moved, s).edges


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(3, 9))
def test_origin_independence_random_body(seed, n):
    body = preset("random-convex")
    s = generate_sites("uniform", n, seed, body=body)
    moved = body.with_origin((F(1, 10), F(-1, 20)))
    assert build_delaunay(body, s).edges == build_delaunay(moved, s).edges
