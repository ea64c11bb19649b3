import dataclasses
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import body_and_params
from convexdg.convex_shape import Homothet, PreconditionViolated, preset
from convexdg.delaunay import build_delaunay, make_sites
from convexdg.generators import generate_sites
from convexdg.spanner import (
    Disconnected,
    NotPlane,
    arc_inequality_check,
    arc_terms,
    chain_monotone,
    components,
    diamond_check,
    diamond_triangles,
    direct_path,
    euclidean_stretch,
    euler_ok,
    face_count,
    faces,
    is_triangulation,
    one_sided_check,
    random_arc_triple,
    segment_in_face,
    segment_owners,
    visible_pair_check,
)

SQUARE = preset("square")
SHAPES = ("square", "equilateral-triangle", "pentagon", "random-convex")

site_lists = st.lists(st.tuples(st.integers(-40, 40), st.integers(-40, 40)), min_size=2, max_size=8, unique=True)


def _graph(shape, gen, n, seed):
    _, prm, work = body_and_params(shape)
    sites = generate_sites(gen, n, seed, body=work)
    return work, prm, sites, build_delaunay(work, sites)


class TestStretch:
    def test_triangle_of_sites(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (4, 1), (1, 5)]))
        assert len(g.edges) == 3
        st_ = euclidean_stretch(g)
        assert st_.max_stretch == 1.0
        assert st_.bound_used is None and st_.within_bound() is None

    def test_collinear_chain(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (5, 0), (1, 0), (2, 0)]))
        assert g.edges == ((0, 2), (1, 3), (2, 3))
        assert euclidean_stretch(g).max_stretch == pytest.approx(1.0, abs=1e-15)
        assert not is_triangulation(g)

    def test_square_within_prior_bound(self):
        _, prm, work = body_and_params("square")
        worst = 1.0
        for seed in range(50):
            g = build_delaunay(work, generate_sites("uniform", 20, seed, body=work))
            r = euclidean_stretch(g, params=prm)
            assert r.within_bound()
            worst = max(worst, r.max_stretch)
        assert 1.0 < worst <= math.sqrt(10)

    def test_disconnected(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (3, 1), (7, 2)]))
        cut = dataclasses.replace(g, edges=g.edges[:1], witnesses={g.edges[0]: g.witnesses[g.edges[0]]})
        with pytest.raises(Disconnected) as exc:
            euclidean_stretch(cut)
        assert 2 in exc.value.pair

    def test_explicit_bound_overrides(self):
        *_, g = _graph("square", "uniform", 12, 1)
        r = euclidean_stretch(g, bound=1.0)
        assert r.bound_used == 1.0 and r.within_bound() is False

    @settings(max_examples=40)
    @given(site_lists)
    def test_stretch_properties(self, pts):
        _, prm, work = body_and_params("pentagon")
        g = build_delaunay(work, make_sites(pts))
        r = euclidean_stretch(g, params=prm)
        assert np.allclose(r.graph_dist, r.graph_dist.T)
        assert r.max_stretch >= 1.0 - 1e-12
        assert r.within_bound(1e-9)


class TestFaces:
    def test_triangle(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (4, 1), (1, 5)]))
        fs = faces(g)
        assert len(fs.faces) == 2 and face_count(fs) == 2
        (b,) = fs.bounded
        assert fs.areas[b] == F(19, 2)
        assert fs.areas[fs.outer_face] == -F(19, 2)
        assert is_triangulation(g, fs)

    def test_crossing_edges_rejected(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (2, 0), (2, 2), (0, 2)]))
        bad = dataclasses.replace(g, edges=((0, 2), (1, 3)))
        with pytest.raises(NotPlane):
            faces(bad)

    @pytest.mark.parametrize("shape", SHAPES)
    @pytest.mark.parametrize("gen", ["uniform", "collinear", "cocircular", "grid", "clustered"])
    def test_euler(self, shape, gen):
        for seed in range(3):
            _, _, _, g = _graph(shape, gen, 15, seed)
            fs = faces(g)
            assert euler_ok(g, fs)
            assert components(g) == 1
            assert all(a > 0 for a in (fs.areas[f] for f in fs.bounded))


class TestDirectPath:
    def test_collinear_walks_every_site(self):
        sites = make_sites([(0, 0), (1, 0), (3, 0), (6, 0)])
        g = build_delaunay(SQUARE, sites)
        dp = direct_path(SQUARE, sites, g, 0, 3)
        assert dp.vertices == (0, 1, 2, 3)
        assert dp.params == pytest.approx((0.5 / 6, 2 / 6, 4.5 / 6))
        assert not dp.one_sided
        assert dp.length == pytest.approx(6.0)

    def test_same_site(self):
        sites = make_sites([(0, 0), (1, 0)])
        with pytest.raises(ValueError):
            direct_path(SQUARE, sites, None, 1, 1)

    @pytest.mark.parametrize("shape", SHAPES + ("regular-64",))
    def test_paths_are_monotone(self, shape):
        work, prm, sites, g = _graph(shape, "uniform", 14, 5)
        seen_one_sided = 0
        for i in range(len(sites)):
            for j in range(len(sites)):
                if i == j:
                    continue
                dp = direct_path(work, sites, g, i, j)
                assert dp.vertices[0] == i and dp.vertices[-1] == j
                assert chain_monotone(dp)
                assert one_sided_check(dp, prm.kappa, 1e-9)
                seen_one_sided += dp.one_sided
        assert seen_one_sided > 0

    def test_owners_match_sampling(self):
        # independent lexicographic argmin along the left-shifted segment
        N = 401
        for seed in (0, 1):
            sites = generate_sites("uniform", 5, seed, body=SQUARE)
            P, rank, G = sites.points, sites.rank, SQUARE.forms
            for i in range(5):
                for j in range(5):
                    if i == j:
                        continue
                    owners, taus, _ = segment_owners(SQUARE, sites, i, j)
                    u = (P[j][0] - P[i][0], P[j][1] - P[i][1])
                    eps = F(1, 10**7)
                    seq = []
                    for s in range(1, N):
                        t = F(s, N)
                        x = (P[i][0] + t * u[0] - u[1] * eps, P[i][1] + t * u[1] + u[0] * eps)
                        o = min(range(5), key=lambda r: (max(g[0] * (P[r][0] - x[0]) + g[1] * (P[r][1] - x[1])
                                                             for g in G), rank[r]))
                        if not seq or seq[-1] != o:
                            seq.append(o)
                    bounds = [0.0] + taus + [1.0]
                    keep = [o for k, o in enumerate(owners) if bounds[k + 1] - bounds[k] > 3.0 / N]
                    keep = [o for k, o in enumerate(keep) if k == 0 or keep[k - 1] != o]
                    assert keep == seq, (seed, i, j)

    def _one_sided(self):
        work, prm, sites, g = _graph("square", "uniform", 14, 5)
        for i in range(len(sites)):
            for j in range(i + 1, len(sites)):
                dp = direct_path(work, sites, g, i, j)
                if dp.one_sided and len(dp.vertices) > 2:
                    return prm, dp
        raise AssertionError("no one-sided path with an interior vertex")

    def test_inflated_length_fails(self):
        prm, dp = self._one_sided()
        assert one_sided_check(dp, prm.kappa)
        assert not one_sided_check(dataclasses.replace(dp, length=dp.pq_length * prm.kappa * 1.01), prm.kappa)

    def test_chord_ends_reversed_fail(self):
        _, dp = self._one_sided()
        assert chain_monotone(dp)
        assert not chain_monotone(dataclasses.replace(dp, right=dp.right[::-1] if dp.right[0] != dp.right[-1]
                                                      else (dp.right[0] + 1,) + dp.right[1:]))
        assert not chain_monotone(dataclasses.replace(dp, left=(0.25,) + dp.left[1:]))


class TestArcInequality:
    AXIS = ((0, 0), (1, 0))

    def test_square_example(self):
        C1, C2 = Homothet((0, 0), 1), Homothet((F(1, 2), 0), 1)
        t = arc_terms(SQUARE, C1, C2, (0, 1), self.AXIS)
        assert (t.L1, t.L2, t.r1r2) == (2.0, 2.5, 0.5)
        assert arc_inequality_check(SQUARE, C1, C2, (0, 1), self.AXIS, kappa=1.0)
        assert not arc_inequality_check(SQUARE, C1, C2, (0, 1), self.AXIS, kappa=0.99)

    @pytest.mark.parametrize("case", ["same", "below", "off_axis", "not_on_boundary", "zero_axis"])
    def test_preconditions(self, case):
        C1, C2, x, axis = Homothet((0, 0), 1), Homothet((F(1, 2), 0), 1), (0, 1), self.AXIS
        if case == "same":
            C2 = C1
        elif case == "below":
            x = (0, -1)
        elif case == "off_axis":
            C2 = Homothet((F(1, 2), F(1, 10)), 1)
        elif case == "not_on_boundary":
            x = (0, F(1, 2))
        else:
            axis = ((0, 0), (0, 0))
        with pytest.raises(PreconditionViolated):
            arc_terms(SQUARE, C1, C2, x, axis)

    @pytest.mark.parametrize("shape", SHAPES + ("regular-64",))
    def test_random_triples(self, shape):
        _, prm, work = body_and_params(shape)
        rng = np.random.default_rng(11)
        for _ in range(150):
            C1, C2, x, axis = random_arc_triple(work, rng)
            assert arc_inequality_check(work, C1, C2, x, axis, prm.kappa)


class TestDiamond:
    def test_two_sites(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (3, 1)]))
        r = diamond_check(g, g.sites, 1.5)
        assert r.ok and r.entries[0].empty == (True, True)

    def test_triangles_geometry(self):
        t1, t2 = diamond_triangles((0, 0), (2, 0), math.pi / 4)
        assert t1[2] == pytest.approx((1.0, 1.0)) and t2[2] == pytest.approx((1.0, -1.0))

    def test_alpha_range(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (3, 1)]))
        for a in (0.0, math.pi / 2):
            with pytest.raises(ValueError):
                diamond_check(g, g.sites, a)

    @pytest.mark.parametrize("shape", SHAPES)
    def test_holds_below_alpha(self, shape):
        _, prm, work = body_and_params(shape)
        for seed in range(4):
            sites = generate_sites("uniform", 25, seed, body=work)
            assert diamond_check(build_delaunay(work, sites), sites, prm.alpha - prm.tolerance).ok

    def test_fails_near_right_angle(self):
        work, _, sites, g = _graph("square", "uniform", 30, 0)
        r = diamond_check(g, sites, math.pi / 2 - 0.01)
        assert r.violations
        for e in r.entries:
            if e.edge in r.violations:
                assert all(e.blockers)


def _inside_closed(cycle, x, tol=1e-9):
    """Float winding test; None when x is within tol of the boundary."""
    w = 0
    k = len(cycle)
    for t in range(k):
        a, b = cycle[t], cycle[(t + 1) % k]
        ab = b - a
        L = math.hypot(*ab)
        s = float(np.clip(np.dot(x - a, ab) / (L * L), 0, 1))
        if math.hypot(*(a + s * ab - x)) < tol * (1 + L):
            return None
        c = ab[0] * (x[1] - a[1]) - ab[1] * (x[0] - a[0])
        if a[1] <= x[1] < b[1] and c > 0:
            w += 1
        elif b[1] <= x[1] < a[1] and c < 0:
            w -= 1
    return w != 0


class TestVisiblePairs:
    def test_triangle_has_none(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (4, 1), (1, 5)]))
        r = visible_pair_check(SQUARE, g.sites, g, 2.0)
        assert r.ok and r.checked == 0

    @pytest.mark.parametrize("shape", SHAPES)
    def test_within_kappa(self, shape):
        work, prm, sites, g = _graph(shape, "uniform", 20, 2)
        r = visible_pair_check(work, sites, g, prm.kappa)
        assert r.ok and 1.0 <= r.worst_ratio <= prm.kappa

    def test_kappa_one_flags_pairs(self):
        work, _, sites, g = _graph("equilateral-triangle", "uniform", 20, 2)
        r = visible_pair_check(work, sites, g, 1.0)
        assert r.checked > 0 and len(r.violations) == r.checked

    @pytest.mark.parametrize("shape", SHAPES)
    def test_segment_in_face_matches_sampling(self, shape):
        for seed in range(3):
            _, _, sites, g = _graph(shape, "uniform", 10, seed)
            fs = faces(g)
            Pf = sites.points_f
            for f in fs.bounded:
                vs = sorted(set(fs.vertices(f)))
                if len(vs) != len(fs.faces[f]):
                    continue
                cyc = [Pf[u] for u, _ in fs.faces[f]]
                for a in range(len(vs)):
                    for b in range(a + 1, len(vs)):
                        p, q = vs[a], vs[b]
                        samples = [_inside_closed(cyc, Pf[p] + t * (Pf[q] - Pf[p])) for t in np.linspace(0, 1, 203)[1:-1]]
                        sampled = all(s is not False for s in samples)
                        assert segment_in_face(g, fs, f, p, q) == sampled, (shape, seed, f, p, q)
