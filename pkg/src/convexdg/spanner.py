"""Stretch measurement and checks of the structural spanner properties.

Covers Euclidean stretch via all-pairs shortest paths, direct paths
through the Voronoi cells crossed by a segment, the diamond property,
the arc inequality for two homothets on a common axis, plane faces and the
visible-pair property.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from . import _fastscan as _fs
from .convex_shape import ConvexBody, Homothet, Location, PreconditionViolated, classify, upper_arc
from .delaunay import DelaunayGraph, SiteSet, planarity_check
from .exact import Point, cross, dot, orient, perp, sub, to_point

REL_TOL = 1e-9


class Disconnected(RuntimeError):
    def __init__(self, pair):
        super().__init__(f"graph is disconnected: no path between sites {pair[0]} and {pair[1]}")
        self.pair = pair


class NotPlane(ValueError):
    pass


# ------------------------------------------------------------------ stretch


@dataclass(frozen=True)
class StretchReport:
    max_stretch: float
    arg_pair: Optional[tuple[int, int]]
    per_pair_stretch: np.ndarray
    bound_used: Optional[float]
    is_triangulation: bool
    graph_dist: np.ndarray

    def within_bound(self, rel_tol: float = REL_TOL) -> Optional[bool]:
        if self.bound_used is None:
            return None
        return self.max_stretch <= self.bound_used * (1 + rel_tol)


def edge_lengths(g: DelaunayGraph) -> np.ndarray:
    P = g.sites.points_f
    if not g.edges:
        return np.zeros(0)
    e = np.array(g.edges)
    return np.hypot(*(P[e[:, 0]] - P[e[:, 1]]).T)


def graph_distances(g: DelaunayGraph) -> np.ndarray:
    n = len(g.sites)
    if not g.edges:
        d = np.full((n, n), np.inf)
        np.fill_diagonal(d, 0.0)
        return d
    e = np.array(g.edges)
    w = edge_lengths(g)
    A = csr_matrix((w, (e[:, 0], e[:, 1])), shape=(n, n))
    return shortest_path(A, method="D", directed=False)


def euclidean_stretch(g: DelaunayGraph, bound: Optional[float] = None, params=None) -> StretchReport:
    """Max over site pairs of graph distance over Euclidean distance.

    ``params`` (ShapeParams) selects the bound branch from the detected
    triangulation flag; ``bound`` overrides it.
    """
    n = len(g.sites)
    dist = graph_distances(g)
    if np.isinf(dist).any():
        i, j = map(int, np.argwhere(np.isinf(dist))[0])
        raise Disconnected((i, j))
    P = g.sites.points_f
    eu = np.hypot(P[:, None, 0] - P[None, :, 0], P[:, None, 1] - P[None, :, 1])
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(eu > 0, dist / eu, 1.0)
    np.fill_diagonal(ratio, 1.0)
    tri = is_triangulation(g)
    if bound is None and params is not None:
        bound = params.bound(tri)
    if n < 2:
        return StretchReport(1.0, None, ratio, bound, tri, dist)
    iu = np.triu_indices(n, 1)
    k = int(np.argmax(ratio[iu]))
    pair = (int(iu[0][k]), int(iu[1][k]))
    return StretchReport(float(ratio[pair]), pair, ratio, bound, tri, dist)


# ------------------------------------------------------------------ faces


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[tuple[tuple[int, int], ...], ...]
    outer_face: int
    areas: tuple[Fraction, ...]

    def vertices(self, f: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self.faces[f])

    @property
    def bounded(self) -> tuple[int, ...]:
        return tuple(f for f, a in enumerate(self.areas) if a > 0)


def _angle_cmp(a: Point, b: Point) -> int:
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _rotation(g: DelaunayGraph) -> list[list[int]]:
    P = g.sites.points
    rot = []
    for v, nbrs in enumerate(g.adjacency):
        key = cmp_to_key(lambda a, b, v=v: _angle_cmp(sub(P[a], P[v]), sub(P[b], P[v])))
        rot.append(sorted(nbrs, key=key))
    return rot


def faces(g: DelaunayGraph, check: bool = True) -> FaceSet:
    """Face cycles by half-edge traversal; bounded faces run counter-clockwise."""
    if check:
        res = planarity_check(g)
        if not res.ok:
            raise NotPlane(f"edges {res.violation} intersect")
    P = g.sites.points
    rot = _rotation(g)
    pos = [{w: k for k, w in enumerate(r)} for r in rot]
    seen = set()
    cycles, areas = [], []
    for a, b in sorted(g.edges):
        for start in ((a, b), (b, a)):
            if start in seen:
                continue
            cyc = []
            h = start
            while h not in seen:
                seen.add(h)
                cyc.append(h)
                u, v = h
                r = rot[v]
                w = r[(pos[v][u] - 1) % len(r)]
                h = (v, w)
            area = Fraction(0)
            for u, v in cyc:
                area += P[u][0] * P[v][1] - P[v][0] * P[u][1]
            cycles.append(tuple(cyc))
            areas.append(area / 2)
    outer = min(range(len(cycles)), key=lambda f: (areas[f], f)) if cycles else -1
    return FaceSet(tuple(cycles), outer, tuple(areas))


def face_count(fs: FaceSet) -> int:
    return len(fs.bounded) + 1


def components(g: DelaunayGraph) -> int:
    n = len(g.sites)
    if not g.edges:
        return n
    e = np.array(g.edges)
    A = csr_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
    return int(connected_components(A, directed=False)[0])


def euler_ok(g: DelaunayGraph, fs: FaceSet) -> bool:
    return len(g.sites) - len(g.edges) + face_count(fs) == 1 + components(g)


def _all_collinear(points: Sequence[Point]) -> bool:
    if len(points) < 3:
        return True
    a = points[0]
    b = next((p for p in points if p != a), None)
    return b is None or all(orient(a, b, c) == 0 for c in points)


def is_triangulation(g: DelaunayGraph, fs: Optional[FaceSet] = None) -> bool:
    """Connected, at least three non-collinear sites, every bounded face a 3-cycle."""
    if len(g.sites) < 3 or _all_collinear(g.sites.points) or components(g) != 1:
        return False
    fs = fs if fs is not None else faces(g, check=False)
    return all(len(fs.faces[f]) == 3 for f in fs.bounded)


# ------------------------------------------------------------------ diamonds


@dataclass(frozen=True)
class DiamondEntry:
    edge: tuple[int, int]
    triangles: tuple[tuple, tuple]  # (p, q, apex) for each side, float coordinates
    empty: tuple[bool, bool]
    blockers: tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class DiamondReport:
    alpha: float
    entries: tuple[DiamondEntry, ...]
    violations: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _inside(tri, pts: np.ndarray, eps_rel: float) -> np.ndarray:
    a, b, c = (np.asarray(v) for v in tri)
    scale = max(np.abs(np.stack([a, b, c])).max(), 1.0) ** 2

    def o(p, q):
        return (q[0] - p[0]) * (pts[:, 1] - p[1]) - (q[1] - p[1]) * (pts[:, 0] - p[0])

    s = 1.0 if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0 else -1.0
    eps = eps_rel * scale
    return (s * o(a, b) > eps) & (s * o(b, c) > eps) & (s * o(c, a) > eps)


def diamond_triangles(p, q, alpha: float):
    p, q = np.asarray(p, float), np.asarray(q, float)
    M = 0.5 * (p + q)
    d = q - p
    h = 0.5 * math.tan(alpha) * np.array([-d[1], d[0]])
    return (tuple(p), tuple(q), tuple(M + h)), (tuple(p), tuple(q), tuple(M - h))


def diamond_check(g: DelaunayGraph, sites: SiteSet, alpha: float, eps_rel: float = 1e-12) -> DiamondReport:
    """Each edge needs one of its two base-angle-alpha triangles free of sites."""
    if not (0 < alpha < math.pi / 2):
        raise ValueError("alpha must lie in (0, pi/2)")
    P = sites.points_f
    entries, bad = [], []
    for a, b in g.edges:
        t1, t2 = diamond_triangles(P[a], P[b], alpha)
        blk = []
        for t in (t1, t2):
            ins = _inside(t, P, eps_rel)
            ins[[a, b]] = False
            blk.append(tuple(int(k) for k in np.flatnonzero(ins)))
        empty = (not blk[0], not blk[1])
        entries.append(DiamondEntry((a, b), (t1, t2), empty, tuple(blk)))
        if not any(empty):
            bad.append((a, b))
    return DiamondReport(alpha, tuple(entries), tuple(bad))


# ------------------------------------------------------------------ direct paths


@dataclass(frozen=True)
class DirectPath:
    """Sites whose cells the segment p -> q crosses, raised by +epsilon.

    ``params`` are the crossing points as fractions of the way from p to q;
    ``left``/``right`` are the ends of each witness homothet's chord on the
    line pq in the same units.
    """

    vertices: tuple[int, ...]
    crossing_points: tuple[tuple[float, float], ...]
    params: tuple[float, ...]
    one_sided: bool
    length: float
    pq_length: float
    left: tuple[float, ...]
    right: tuple[float, ...]
    exact: bool


def _dual_walk_exact(body: ConvexBody, sites: SiteSet, i: int, j: int):
    """Exact walk; values are pairs (real, epsilon coefficient) compared lexicographically."""
    P = sites.points
    rank = sites.rank
    n = len(P)
    p = P[i]
    u = sub(P[j], p)
    nu = perp(u)
    G = body.forms
    m = len(G)
    b = [-dot(gk, u) for gk in G]
    c = [-dot(gk, nu) for gk in G]
    a = [[dot(gk, sub(P[r], p)) for gk in G] for r in range(n)]

    def val(r, k, t):
        return (a[r][k] + b[k] * t[0], c[k] + b[k] * t[1])

    def active(r, t):
        vals = [val(r, k, t) for k in range(m)]
        vmax = max(vals)
        return max((k for k in range(m) if vals[k] == vmax), key=lambda k: b[k])

    o, tc = i, (Fraction(0), Fraction(0))
    verts, taus = [i], []
    while o != j:
        ks = active(o, tc)
        As, Cs, bs = a[o][ks], c[ks], b[ks]
        tend = None
        for k in range(m):
            if b[k] > bs:
                rt = ((As - a[o][k]) / (b[k] - bs), (Cs - c[k]) / (b[k] - bs))
                tend = rt if tend is None or rt < tend else tend
        cands = []
        for r in range(n):
            if r == o:
                continue
            lo = hi = None
            bad = zero = False
            for k in range(m):
                c0 = (a[r][k] - As, c[k] - Cs)
                c1 = b[k] - bs
                if c1 == 0:
                    if c0 > (0, 0):
                        bad = True
                        break
                    zero = zero or c0 == (0, 0)
                    continue
                root = (-c0[0] / c1, -c0[1] / c1)
                if c1 > 0:
                    hi = root if hi is None or root < hi else hi
                else:
                    lo = root if lo is None or root > lo else lo
            if bad or (zero and rank[r] > rank[o]):
                continue
            start = tc if lo is None or lo < tc else lo
            if hi is not None and hi <= start:
                continue
            if tend is not None and start >= tend:
                continue
            cands.append((start, r))
        if not cands:
            assert tend is not None, "walk left every cell"
            tc = tend
            continue
        t = min(x for x, _ in cands)
        tied = [r for x, r in cands if x == t]

        def right_slope(r):
            return b[active(r, t)]

        o = min(tied, key=lambda r: (right_slope(r), rank[r]))
        verts.append(o)
        taus.append(t[0])
        tc = t
        assert len(verts) <= 8 * n + 8, "walk does not terminate"
    return verts, taus


def segment_owners(body: ConvexBody, sites: SiteSet, p: int, q: int, tol: float = 1e-9):
    """Successive owners of the left-shifted segment p -> q and the change parameters.

    Returns (owners, params, exact) where ``exact`` tells whether the float
    walk had to be redone in rational arithmetic.
    """
    status, verts, taus = _fs.walk(body.forms_f, sites.points_f, p, q, tol)
    exact = status != _fs.WALK_OK
    if exact:
        verts, taus = _dual_walk_exact(body, sites, p, q)
    return [int(v) for v in verts], [float(t) for t in taus], exact


def direct_path(body: ConvexBody, sites: SiteSet, g: Optional[DelaunayGraph], p: int, q: int,
                tol: float = 1e-9) -> DirectPath:
    """Direct path from site p to site q.

    The segment is shifted to its left by an infinitesimal amount, which
    decides every pass through a Voronoi vertex. A float walk runs first and
    hands over to the exact walk on any close call. The walk lists every
    cell crossing; the path leaves each cell at its last point on the
    segment, so a cell the segment re-enters is visited once.
    """
    if p == q:
        raise ValueError("direct path needs two distinct sites")
    owners, steps, exact = segment_owners(body, sites, p, q, tol)
    S = sites.points_f
    last = {v: k for k, v in enumerate(owners)}
    verts, taus = [owners[0]], []
    k = 0
    while owners[k] != q:
        k = last[owners[k]]
        taus.append(steps[k])
        k += 1
        verts.append(owners[k])
    verts, taus = tuple(verts), tuple(taus)
    if len(set(verts)) != len(verts):
        raise AssertionError(f"direct path {verts} repeats a site")
    if g is not None:
        for a, b in zip(verts, verts[1:]):
            if not g.has_edge(a, b):
                raise AssertionError(f"direct path step {a}-{b} is not a Delaunay edge")
    P = sites.points
    side = {orient(P[p], P[q], P[v]) for v in verts[1:-1]}
    one_sided = len(side) <= 1 and 0 not in side
    u = S[q] - S[p]
    pts = tuple((float(S[p, 0] + t * u[0]), float(S[p, 1] + t * u[1])) for t in taus)
    length = float(sum(math.hypot(*(S[b] - S[a])) for a, b in zip(verts, verts[1:])))
    gu = float(body.gauge_f(u))
    gmu = float(body.gauge_f(-u))
    left, right = [], []
    for k, (t, x) in enumerate(zip(taus, pts)):
        lam = float(body.gauge_f(S[verts[k + 1]] - np.asarray(x)))
        left.append(t - lam / gmu)
        right.append(t + lam / gu)
    return DirectPath(verts, pts, taus, one_sided, length, float(math.hypot(*u)), tuple(left), tuple(right), exact)


def one_sided_check(path: DirectPath, kappa: float, rel_tol: float = REL_TOL) -> bool:
    """Length bound for one-sided paths; other paths pass trivially (see ``path.one_sided``)."""
    if not path.one_sided:
        return True
    return path.length <= kappa * path.pq_length * (1 + rel_tol)


def chain_monotone(path: DirectPath, tol: float = 1e-9) -> bool:
    """Crossings increase strictly; chord ends never move back; p is the first left end."""
    t = path.params
    if any(not (0 < x < 1) for x in t) or any(b <= a for a, b in zip(t, t[1:])):
        return False
    if not path.one_sided:
        return True
    if any(b < a - tol for a, b in zip(path.left, path.left[1:])):
        return False
    if any(b < a - tol for a, b in zip(path.right, path.right[1:])):
        return False
    return abs(path.left[0]) <= tol


# ------------------------------------------------------------------ arc inequality


@dataclass(frozen=True)
class ArcTerms:
    L1: float
    L2: float
    r1r2: float


def _axis_gauges(body: ConvexBody, d: Point) -> tuple[Fraction, Fraction]:
    """gauge(-d) and gauge(d), memoised on the body."""
    cache = body.__dict__.setdefault("_axis_gauges", {})
    got = cache.get(d)
    if got is None:
        got = cache[d] = (body.gauge((-d[0], -d[1])), body.gauge(d))
    return got


def _chord_ends(body: ConvexBody, h: Homothet, ap: Point, d: Point):
    """Parameters (along d from ap) of the left and right ends of h on the axis."""
    s = dot(sub(h.center, ap), d) / dot(d, d)
    lam = Fraction(h.scale)
    gm, gp = _axis_gauges(body, d)
    return s - lam / gm, s + lam / gp


def arc_terms(body: ConvexBody, C1: Homothet, C2: Homothet, x, axis) -> ArcTerms:
    """L1, L2 and |r1 r2| for two homothets centered on an oriented axis."""
    ap, d = to_point(axis[0]), to_point(axis[1])
    x = to_point(x)
    if d == (0, 0):
        raise PreconditionViolated("axis direction is zero")
    for name, h in (("C1", C1), ("C2", C2)):
        if h.scale <= 0:
            raise PreconditionViolated(f"{name} has non-positive scale")
        if cross(d, sub(h.center, ap)) != 0:
            raise PreconditionViolated(f"{name} center is off the axis")
        if classify(h, body, x) is not Location.BOUNDARY:
            raise PreconditionViolated(f"x is not on the boundary of {name}")
    if cross(d, sub(x, ap)) < 0:
        raise PreconditionViolated("x lies below the axis")
    y1 = dot(sub(C1.center, ap), d)
    y2 = dot(sub(C2.center, ap), d)
    if not y1 < y2:
        raise PreconditionViolated("centers are not ordered y1 < y2")
    l1, r1 = _chord_ends(body, C1, ap, d)
    l2, r2 = _chord_ends(body, C2, ap, d)
    if not r1 <= r2:
        raise PreconditionViolated("r1 lies beyond r2")
    if not (l1 <= l2 < r1):
        raise PreconditionViolated("left ends violate l1 <= l2 < r1")
    R1 = (ap[0] + r1 * d[0], ap[1] + r1 * d[1])
    R2 = (ap[0] + r2 * d[0], ap[1] + r2 * d[1])
    L1 = upper_arc(C1, body, x, R1, (ap, d))
    L2 = upper_arc(C2, body, x, R2, (ap, d))
    return ArcTerms(L1, L2, float(r2 - r1) * math.hypot(float(d[0]), float(d[1])))


def arc_inequality_check(body: ConvexBody, C1: Homothet, C2: Homothet, x, axis, kappa: float,
                         rel_tol: float = 1e-12) -> bool:
    t = arc_terms(body, C1, C2, x, axis)
    return t.L2 <= (t.L1 + kappa * t.r1r2) * (1 + rel_tol)


def random_arc_triple(body: ConvexBody, rng: np.random.Generator, max_tries: int = 1000):
    """Random rational (C1, C2, x, axis) meeting the arc-inequality preconditions."""
    gm, gp = None, None
    for _ in range(max_tries):
        dx, dy = (int(v) for v in rng.integers(-6, 7, size=2))
        if dx == 0 and dy == 0:
            continue
        d = (Fraction(dx), Fraction(dy))
        ap = (Fraction(int(rng.integers(-50, 51)), 10), Fraction(int(rng.integers(-50, 51)), 10))
        s1, s2 = sorted(Fraction(int(v), 100) for v in rng.integers(-300, 301, size=2))
        if s1 == s2:
            continue
        sx = Fraction(int(rng.integers(-400, 401)), 100)
        hgt = Fraction(int(rng.integers(0, 301)), 100)
        nd = perp(d)
        x = (ap[0] + sx * d[0] + hgt * nd[0], ap[1] + sx * d[1] + hgt * nd[1])
        y1 = (ap[0] + s1 * d[0], ap[1] + s1 * d[1])
        y2 = (ap[0] + s2 * d[0], ap[1] + s2 * d[1])
        lam1, lam2 = body.gauge(sub(x, y1)), body.gauge(sub(x, y2))
        if lam1 == 0 or lam2 == 0:
            continue
        C1, C2 = Homothet(y1, lam1), Homothet(y2, lam2)
        gm, gp = _axis_gauges(body, d)
        l1, r1 = s1 - lam1 / gm, s1 + lam1 / gp
        l2, r2 = s2 - lam2 / gm, s2 + lam2 / gp
        if r1 <= r2 and l1 <= l2 < r1:
            return C1, C2, x, (ap, d)
    raise RuntimeError("no precondition-satisfying triple found")


# ------------------------------------------------------------------ visible pairs


@dataclass(frozen=True)
class VisiblePairReport:
    ok: bool
    checked: int
    worst_ratio: float
    violations: tuple[tuple[int, int, float], ...]


def _winding(cycle_pts: Sequence[Point], x: Point) -> int:
    w = 0
    k = len(cycle_pts)
    for t in range(k):
        a, b = cycle_pts[t], cycle_pts[(t + 1) % k]
        if a[1] <= x[1]:
            if b[1] > x[1] and orient(a, b, x) > 0:
                w += 1
        elif b[1] <= x[1] and orient(a, b, x) < 0:
            w -= 1
    return w


def _split_params(P, edges, Pf, p: int, q: int) -> list[Fraction]:
    a, b = P[p], P[q]
    u = sub(b, a)
    uu = dot(u, u)
    lo = np.minimum(Pf[p], Pf[q]) - 1e-9
    hi = np.maximum(Pf[p], Pf[q]) + 1e-9
    ts = {Fraction(0), Fraction(1)}
    for c, d in edges:
        e0, e1 = Pf[c], Pf[d]
        if (np.maximum(e0, e1) < lo).any() or (np.minimum(e0, e1) > hi).any():
            continue
        C, D = P[c], P[d]
        o1, o2 = orient(a, b, C), orient(a, b, D)
        if o1 == 0:
            ts.add(dot(sub(C, a), u) / uu)
        if o2 == 0:
            ts.add(dot(sub(D, a), u) / uu)
        if o1 * o2 < 0 and orient(C, D, a) * orient(C, D, b) < 0:
            v = sub(D, C)
            ts.add(cross(sub(C, a), v) / cross(u, v))
    return sorted(t for t in ts if 0 <= t <= 1)


def segment_in_face(g: DelaunayGraph, fs: FaceSet, f: int, p: int, q: int) -> bool:
    """Does the closed segment pq stay inside the closure of face f?"""
    P = g.sites.points
    Pf = g.sites.points_f
    cyc = fs.faces[f]
    on_face = {(min(u, v), max(u, v)) for u, v in cyc}
    cyc_pts = [P[u] for u, _ in cyc]
    outer = f == fs.outer_face
    a, b = P[p], P[q]
    u = sub(b, a)
    ts = _split_params(P, g.edges, Pf, p, q)
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        x = (a[0] + tm * u[0], a[1] + tm * u[1])
        along = None
        for c, d in g.edges:
            if orient(P[c], P[d], x) == 0 and min(P[c][0], P[d][0]) <= x[0] <= max(P[c][0], P[d][0]) \
                    and min(P[c][1], P[d][1]) <= x[1] <= max(P[c][1], P[d][1]):
                along = (c, d)
                break
        if along is not None:
            if along not in on_face:
                return False
            continue
        w = _winding(cyc_pts, x)
        if (w != 0) == outer:
            return False
    return True


def visible_pair_check(body: ConvexBody, sites: SiteSet, g: DelaunayGraph, kappa: float,
                       fs: Optional[FaceSet] = None, dist: Optional[np.ndarray] = None,
                       rel_tol: float = REL_TOL) -> VisiblePairReport:
    """Graph distance of face-visible pairs against kappa times their distance."""
    fs = fs if fs is not None else faces(g, check=False)
    dist = dist if dist is not None else graph_distances(g)
    Pf = sites.points_f
    done = set()
    viol, worst, count = [], 1.0, 0
    for f in range(len(fs.faces)):
        vs = sorted(set(fs.vertices(f)))
        for x in range(len(vs)):
            for y in range(x + 1, len(vs)):
                p, q = vs[x], vs[y]
                if (p, q) in done or g.has_edge(p, q):
                    continue
                if not segment_in_face(g, fs, f, p, q):
                    continue
                done.add((p, q))
                count += 1
                ratio = float(dist[p, q] / math.hypot(*(Pf[p] - Pf[q])))
                worst = max(worst, ratio)
                if ratio > kappa * (1 + rel_tol):
                    viol.append((p, q, ratio))
    return VisiblePairReport(not viol, count, worst, tuple(viol))


__all__ = [
    "ArcTerms",
    "DiamondEntry",
    "DiamondReport",
    "DirectPath",
    "Disconnected",
    "FaceSet",
    "NotPlane",
    "StretchReport",
    "VisiblePairReport",
    "arc_inequality_check",
    "arc_terms",
    "chain_monotone",
    "components",
    "diamond_check",
    "diamond_triangles",
    "direct_path",
    "edge_lengths",
    "euclidean_stretch",
    "euler_ok",
    "face_count",
    "faces",
    "graph_distances",
    "is_triangulation",
    "one_sided_check",
    "random_arc_triple",
    "segment_in_face",
    "visible_pair_check",
]
