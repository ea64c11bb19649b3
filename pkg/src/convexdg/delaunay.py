"""Delaunay graph of a point set under a convex polygonal distance.

An edge pq exists iff the cells of p and q share a boundary piece of
positive length. The cells are the closures of the interiors of the sets
where a site is the (distance, lexicographic rank) minimiser.

For a pair p, q the locus d_p = d_q is traced through homothet chords: a
chord of C in direction u = q - p, entering at z1 and leaving at z2, gives
the center x = p - lam*z1 with lam = |u|^2 / u.(z2 - z1). Between vertex
events the locus is straight, so it is a polyline with two end rays, or, when
u is parallel to an edge of C, a pair of rays bounding a 2-D tie region at
each such end.

Along a piece x(t) = X + tD with common value lam(t), a competitor r
dominates where g_r(t) = d_r(x(t)) - lam(t) < 0. g_r is the max of linear
functions of t, so each dominated set is an interval. Undominated
sub-intervals are then classified by looking at which site wins on either
side of the piece; the pair is an edge iff some sub-interval has p on one
side and q on the other.

A vectorised float pass with a safety margin settles most pairs. Edges it
accepts are confirmed by an exact witness, and pairs it cannot settle are
redone in exact rational arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import _fastscan as _fs
from .convex_shape import ConvexBody, Homothet, Location, classify
from .exact import Number, Point, on_segment, orient, segments_intersect, to_points

# ------------------------------------------------------------------ sites


class CoincidentSites(ValueError):
    pass


@dataclass(frozen=True)
class SiteSet:
    points: tuple[Point, ...]
    lex_order: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def rank(self) -> tuple[int, ...]:
        r = [0] * len(self.points)
        for pos, i in enumerate(self.lex_order):
            r[i] = pos
        return tuple(r)

    @cached_property
    def points_f(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.points]).reshape(-1, 2)


def make_sites(points: Sequence[Sequence[Number]]) -> SiteSet:
    pts = to_points(points)
    if len(set(pts)) != len(pts):
        raise CoincidentSites("site set contains duplicate points")
    order = tuple(sorted(range(len(pts)), key=lambda i: pts[i]))
    return SiteSet(pts, order)


# ------------------------------------------------------------------ bisector


class PieceKind(Enum):
    CURVE = "curve"
    TIE_P = "tie-p"  # boundary of a 2-D tie region, p sits at a vertex
    TIE_Q = "tie-q"


class Piece(NamedTuple):
    """x(t) = start + t*direction, t in [0, 1] or [0, inf) for rays.

    ``lam0 + t*dlam`` is the common distance to both sites along the piece.
    ``cones`` are the body edges whose forms are active for p and q.
    ``sigma`` is the chord-offset range the piece was traced from.
    """

    start: tuple
    direction: tuple
    bounded: bool
    lam0: object
    dlam: object
    cones: tuple[int, int]
    kind: PieceKind
    sigma: tuple

    def at(self, t):
        return (self.start[0] + t * self.direction[0], self.start[1] + t * self.direction[1])


@dataclass(frozen=True)
class Bisector:
    site_a: Point
    site_b: Point
    pieces: tuple[Piece, ...]


def _interp(a, b, sa, sb, s):
    if s == sb:
        return b
    if s == sa:
        return a
    f = (s - sa) / (sb - sa)
    return (a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]))


def _trace(rel: Sequence, p, q) -> list[Piece]:
    """All candidate pieces of {d_p = d_q}; works for Fraction or float input."""
    m = len(rel)
    ux, uy = q[0] - p[0], q[1] - p[1]
    uu = ux * ux + uy * uy
    sig = [-uy * c[0] + ux * c[1] for c in rel]
    smin, smax = min(sig), max(sig)
    i0 = next(i for i in range(m) if sig[i] == smin and sig[(i + 1) % m] > smin)
    A = [i0]
    while sig[A[-1]] != smax:
        A.append((A[-1] + 1) % m)
    j0 = next(i for i in range(m) if sig[i] == smax and sig[(i + 1) % m] < smax)
    B = [j0]
    while sig[B[-1]] != smin:
        B.append((B[-1] + 1) % m)
    B.reverse()

    def center(z1, z2):
        den = ux * (z2[0] - z1[0]) + uy * (z2[1] - z1[1])
        lam = uu / den
        return (p[0] - lam * z1[0], p[1] - lam * z1[1]), lam

    events = sorted(set(sig[i] for i in A[1:-1]) | set(sig[i] for i in B[1:-1]))
    nodes = []  # (sigma, X, lam)
    lo_vertex = A[0] == B[0]
    hi_vertex = A[-1] == B[-1]
    pieces: list[Piece] = []
    if not lo_vertex:
        z1, z2 = rel[B[0]], rel[A[0]]
        X, lam = center(z1, z2)
        nodes.append((smin, X, lam))
        e = B[0]
        pieces.append(Piece(X, (-z1[0], -z1[1]), False, lam, 1, (e, e), PieceKind.TIE_P, (smin, smin)))
        pieces.append(Piece(X, (-z2[0], -z2[1]), False, lam, 1, (e, e), PieceKind.TIE_Q, (smin, smin)))
    ia = ib = 0
    gaps = []  # edge pair valid above each node
    for s in events:
        while sig[A[ia + 1]] < s:
            ia += 1
        while sig[B[ib + 1]] < s:
            ib += 1
        z2 = _interp(rel[A[ia]], rel[A[ia + 1]], sig[A[ia]], sig[A[ia + 1]], s)
        z1 = _interp(rel[B[ib]], rel[B[ib + 1]], sig[B[ib]], sig[B[ib + 1]], s)
        X, lam = center(z1, z2)
        nodes.append((s, X, lam))
    if not hi_vertex:
        z1, z2 = rel[B[-1]], rel[A[-1]]
        X, lam = center(z1, z2)
        nodes.append((smax, X, lam))

    # edges active strictly between consecutive sigma nodes
    bounds = [smin] + events + [smax]
    ia = ib = 0
    for k in range(len(bounds) - 1):
        lo = bounds[k]
        while sig[A[ia + 1]] <= lo:
            ia += 1
        while sig[B[ib + 1]] <= lo:
            ib += 1
        gaps.append((B[ib + 1], A[ia], lo, bounds[k + 1]))

    node_at = {s: (X, lam) for s, X, lam in nodes}
    for eb, ea, lo, hi in gaps:
        a = node_at.get(lo)
        b = node_at.get(hi)
        if a is not None and b is not None:
            D = (b[0][0] - a[0][0], b[0][1] - a[0][1])
            if D == (0, 0):
                continue
            pieces.append(Piece(a[0], D, True, a[1], b[1] - a[1], (eb, ea), PieceKind.CURVE, (lo, hi)))
        elif a is not None:
            v = rel[A[-1]]
            pieces.append(Piece(a[0], (-v[0], -v[1]), False, a[1], 1, (eb, ea), PieceKind.CURVE, (lo, hi)))
        elif b is not None:
            v = rel[A[0]]
            pieces.append(Piece(b[0], (-v[0], -v[1]), False, b[1], 1, (eb, ea), PieceKind.CURVE, (lo, hi)))
    if not hi_vertex:
        X, lam = node_at[smax]
        z1, z2 = rel[B[-1]], rel[A[-1]]
        e = A[-1]
        pieces.append(Piece(X, (-z1[0], -z1[1]), False, lam, 1, (e, e), PieceKind.TIE_P, (smax, smax)))
        pieces.append(Piece(X, (-z2[0], -z2[1]), False, lam, 1, (e, e), PieceKind.TIE_Q, (smax, smax)))
    return pieces


def bisector(body: ConvexBody, p, q) -> Bisector:
    """Canonical bisector curve of p and q.

    Where the two distances agree on a 2-D region, only the boundary ray
    adjacent to the region of the lexicographically larger site is kept
    (the smaller site owns the region).
    """
    p, q = to_points([p, q])
    if p == q:
        raise CoincidentSites(f"bisector of {p} with itself")
    drop = PieceKind.TIE_Q if p < q else PieceKind.TIE_P
    return Bisector(p, q, tuple(pc for pc in _trace(body.rel, p, q) if pc.kind is not drop))


# ------------------------------------------------------------------ float scan

_SNAP = 1e-12
_MARGIN = 1e-9


def _piece_arrays(pieces: Sequence[Piece]):
    X = np.array([[float(pc.start[0]), float(pc.start[1])] for pc in pieces])
    D = np.array([[float(pc.direction[0]), float(pc.direction[1])] for pc in pieces])
    lam0 = np.array([float(pc.lam0) for pc in pieces])
    dlam = np.array([float(pc.dlam) for pc in pieces])
    bounded = np.array([pc.bounded for pc in pieces], dtype=bool)
    return X, D, lam0, dlam, bounded


@dataclass
class PieceScan:
    status: str  # "dominated", "free", "unsure", "fuzzy"
    free: list  # (a, b) parameter ranges of the undominated set (float)
    width: list  # positional uncertainty of each endpoint pair
    relevant: np.ndarray  # competitor mask that comes within margin somewhere


_STATUS = ("dominated", "free", "unsure", "fuzzy")
_MAXF = 8


def _scan_arrays(body: ConvexBody, sites_f: np.ndarray, others: np.ndarray, X, D, lam0, dlam, bounded):
    GR = np.ascontiguousarray(sites_f[others] @ body.forms_f.T)
    return _fs.scan(X, D, lam0, dlam, bounded, body.forms_f, GR, _MARGIN, _SNAP, _MAXF)


def _scan(body: ConvexBody, sites_f: np.ndarray, others: np.ndarray, pieces: Sequence[Piece]) -> list[PieceScan]:
    """Classify each piece by float interval arithmetic with a safety margin."""
    status, nfree, free, width, relevant = _scan_arrays(body, sites_f, others, *_piece_arrays(pieces))
    out = []
    for k in range(len(pieces)):
        nf = nfree[k]
        out.append(PieceScan(_STATUS[status[k]], [tuple(v) for v in free[k, :nf].tolist()],
                             [tuple(v) for v in width[k, :nf].tolist()], relevant[k]))
    return out


# ------------------------------------------------------------------ exact piece analysis


def _form_coeffs(forms, piece: Piece, r):
    X, D = piece.start, piece.direction
    A, B = [], []
    for g in forms:
        A.append(-(g[0] * D[0] + g[1] * D[1]) - piece.dlam)
        B.append(g[0] * (r[0] - X[0]) + g[1] * (r[1] - X[1]) - piece.lam0)
    return A, B


def _gval(A, B, t):
    return max(a * t + b for a, b in zip(A, B))


def _interval_exact(A, B, strict: bool):
    lo, hi = None, None  # None = unbounded
    for a, b in zip(A, B):
        if a == 0:
            if (b >= 0) if strict else (b > 0):
                return False, None, None
            continue
        r = -b / a
        if a > 0:
            hi = r if hi is None else min(hi, r)
        else:
            lo = r if lo is None else max(lo, r)
    if lo is not None and hi is not None and (lo >= hi if strict else lo > hi):
        return False, None, None
    return True, lo, hi


def _side_labels(forms, rank, cands, sites_pts, x, lam, nu):
    best_plus = best_minus = None
    for s in cands:
        sp = sites_pts[s]
        vx, vy = sp[0] - x[0], sp[1] - x[1]
        dp = dm = None
        for g in forms:
            if g[0] * vx + g[1] * vy == lam:
                gn = g[0] * nu[0] + g[1] * nu[1]
                dp = -gn if dp is None else max(dp, -gn)
                dm = gn if dm is None else max(dm, gn)
        assert dp is not None, "candidate must attain the common distance"
        kp, km = (dp, rank[s], s), (dm, rank[s], s)
        if best_plus is None or kp < best_plus:
            best_plus = kp
        if best_minus is None or km < best_minus:
            best_minus = km
    return best_plus[2], best_minus[2]


def _exact_piece(body: ConvexBody, sites: SiteSet, i: int, j: int, piece: Piece, comp: Sequence[int]):
    """Accepted undominated sub-intervals (a, b, t_mid) of one exact piece."""
    forms = body.forms
    end = Fraction(1) if piece.bounded else None
    bps = {Fraction(0)}
    if end is not None:
        bps.add(end)
    coeffs = {}
    for r in comp:
        A, B = _form_coeffs(forms, piece, sites.points[r])
        coeffs[r] = (A, B)
        okz, zl, zu = _interval_exact(A, B, strict=False)
        okn, nl, nu_ = _interval_exact(A, B, strict=True)
        for v in (zl, zu, nl, nu_) if okz else ():
            if v is not None:
                bps.add(v)
        if okz and not okn and zl != zu:
            for a, b in zip(A, B):
                if a != 0:
                    bps.add(-b / a)
    pts = sorted(v for v in bps if v >= 0 and (end is None or v <= end))
    if end is None:
        pts.append(None)
    nu = (-piece.direction[1], piece.direction[0])
    out = []
    for a, b in zip(pts, pts[1:]):
        if b is not None and b <= a:
            continue
        mid = (a + b) / 2 if b is not None else a + 1
        ties = []
        dominated = False
        for r in comp:
            v = _gval(*coeffs[r], mid)
            if v < 0:
                dominated = True
                break
            if v == 0:
                ties.append(r)
        if dominated:
            continue
        x = piece.at(mid)
        lam = piece.lam0 + mid * piece.dlam
        lp, lm = _side_labels(forms, sites.rank, [i, j] + ties, sites.points, x, lam, nu)
        if {lp, lm} == {i, j}:
            out.append((a, b, mid))
    return out


# ------------------------------------------------------------------ edge test


class EdgeGeometry(NamedTuple):
    """Undominated bisector portions shared by the two cells.

    Each segment is (start, end) in floats with ``end=None`` for a ray, in
    which case ``direction`` gives the ray direction. ``slack`` bounds the
    positional error of each endpoint (0 when exact).
    """

    segments: tuple
    exact: bool


@dataclass
class EdgeResult:
    exists: bool
    witness: Optional[Homothet]
    geometry: Optional[EdgeGeometry]
    exact_pieces: Optional[list] = None
    path: str = ""


def _witness_exact(body: ConvexBody, sites: SiteSet, i: int, j: int, piece_f: Piece, t: float) -> Optional[Homothet]:
    """Exact empty homothet through p and q near parameter t of a float curve piece."""
    p, q = sites.points[i], sites.points[j]
    rel = body.rel
    m = len(rel)
    ux, uy = q[0] - p[0], q[1] - p[1]
    w = (-uy, ux)
    lam_f = piece_f.lam0 + t * piece_f.dlam
    if not lam_f > 0:
        return None
    xf = piece_f.at(t)
    z1f = ((float(p[0]) - xf[0]) / lam_f, (float(p[1]) - xf[1]) / lam_f)
    sigma = Fraction(float(w[0]) * z1f[0] + float(w[1]) * z1f[1])
    eb, ea = piece_f.cones

    def on_edge(e):
        a, b = rel[e], rel[(e + 1) % m]
        sa = w[0] * a[0] + w[1] * a[1]
        sb = w[0] * b[0] + w[1] * b[1]
        if sa == sb or not (min(sa, sb) < sigma < max(sa, sb)):
            return None
        return _interp(a, b, sa, sb, sigma)

    z1, z2 = on_edge(eb), on_edge(ea)
    if z1 is None or z2 is None:
        return None
    den = ux * (z2[0] - z1[0]) + uy * (z2[1] - z1[1])
    if den <= 0:
        return None
    lam = (ux * ux + uy * uy) / den
    x = (p[0] - lam * z1[0], p[1] - lam * z1[1])
    # z1, z2 on the boundary and z2 - z1 parallel to u put p, q on the boundary
    pts = sites.points_f
    xf = np.array([float(x[0]), float(x[1])])
    d = body.gauge_f(pts - xf)
    lamf = float(lam)
    slack = 1e-9 * (1.0 + lamf + np.abs(pts - xf).max() * np.abs(body.forms_f).max())
    for r in range(len(sites)):
        if r == i or r == j:
            continue
        if d[r] - lamf > slack:
            continue
        if body.gauge((sites.points[r][0] - x[0], sites.points[r][1] - x[1])) <= lam:
            return None
    return Homothet(x, lam)


def _parallel_risk(body: ConvexBody, p_f, q_f) -> bool:
    u = np.asarray(q_f) - np.asarray(p_f)
    E = np.roll(body.rel_f, -1, axis=0) - body.rel_f
    c = np.abs(u[0] * E[:, 1] - u[1] * E[:, 0])
    return bool((c <= 1e-9 * np.hypot(*u) * np.hypot(E[:, 0], E[:, 1])).any())


def _geometry_from_scan(pieces_f, scans) -> EdgeGeometry:
    segs = []
    for pc, sc in zip(pieces_f, scans):
        if sc.status not in ("free", "fuzzy"):
            continue
        for (a, b), (wa, wb) in zip(sc.free, sc.width):
            start = pc.at(a)
            end = pc.at(b) if b != math.inf else None
            segs.append((tuple(map(float, start)), None if end is None else tuple(map(float, end)),
                         tuple(map(float, pc.direction)), (wa, wb), None))
    return EdgeGeometry(tuple(segs), False)


def _float_piece(pc: Piece) -> Piece:
    f = float
    return pc._replace(start=(f(pc.start[0]), f(pc.start[1])), direction=(f(pc.direction[0]), f(pc.direction[1])),
                       lam0=f(pc.lam0), dlam=f(pc.dlam))


def edge_test_exact(body: ConvexBody, sites: SiteSet, i: int, j: int) -> EdgeResult:
    """Decide pq exactly; the float scan only prunes pieces and competitors."""
    p, q = sites.points[i], sites.points[j]
    pieces = _trace(body.rel, p, q)
    others = np.array([r for r in range(len(sites)) if r != i and r != j], dtype=int)
    scans = _scan(body, sites.points_f, others, [_float_piece(pc) for pc in pieces]) if len(others) else None
    accepted = []
    for k, pc in enumerate(pieces):
        if scans is not None and scans[k].status == "dominated":
            continue
        comp = [int(r) for r in others[scans[k].relevant]] if scans is not None else []
        for a, b, mid in _exact_piece(body, sites, i, j, pc, comp):
            accepted.append((k, a, b, mid))
    if not accepted:
        return EdgeResult(False, None, None, [], "exact")
    k, a, b, mid = accepted[0]
    pc = pieces[k]
    w = Homothet(pc.at(mid), pc.lam0 + mid * pc.dlam)
    segs = []
    for k, a, b, _ in accepted:
        pc = pieces[k]
        s = pc.at(a)
        e = pc.at(b) if b is not None else None
        segs.append(((float(s[0]), float(s[1])), None if e is None else (float(e[0]), float(e[1])),
                     (float(pc.direction[0]), float(pc.direction[1])), (0.0, 0.0), (s, e, pc.direction)))
    return EdgeResult(True, w, EdgeGeometry(tuple(segs), True), accepted, "exact")


def _pieces_from_arrays(X, D, bounded, lam0, dlam, cones, sigma) -> list[Piece]:
    return [Piece((X[k, 0], X[k, 1]), (D[k, 0], D[k, 1]), bool(bounded[k]), lam0[k], dlam[k],
                  (int(cones[k, 0]), int(cones[k, 1])), PieceKind.CURVE, (sigma[k, 0], sigma[k, 1]))
            for k in range(len(X))]


def edge_test(body: ConvexBody, sites: SiteSet, i: int, j: int) -> EdgeResult:
    n = len(sites)
    if n == 2:
        return edge_test_exact(body, sites, i, j)
    pf = sites.points_f
    if _parallel_risk(body, pf[i], pf[j]):
        return edge_test_exact(body, sites, i, j)
    ok, X, D, bounded, lam0, dlam, cones, sigma = _fs.trace_f(body.rel_f, pf[i, 0], pf[i, 1], pf[j, 0], pf[j, 1])
    if not ok:
        return edge_test_exact(body, sites, i, j)
    others = np.array([r for r in range(n) if r != i and r != j], dtype=np.int64)
    status, nfree, free, width, _ = _scan_arrays(body, pf, others, X, D, lam0, dlam, bounded)
    if (status == _fs.DOMINATED).all():
        return EdgeResult(False, None, None, None, "float")
    if ((status == _fs.UNSURE) | (status == _fs.FUZZY)).any():
        return edge_test_exact(body, sites, i, j)
    # pick the longest certain sub-interval for the witness
    best = None
    for k in np.flatnonzero(status == _fs.FREE):
        dl = math.hypot(D[k, 0], D[k, 1])
        for a, b in free[k, :nfree[k]].tolist():
            bb = b if b != math.inf else a + 2.0
            L = (bb - a) * dl
            if best is None or L > best[0]:
                best = (L, k, 0.5 * (a + bb))
    pieces_f = _pieces_from_arrays(X, D, bounded, lam0, dlam, cones, sigma)
    w = _witness_exact(body, sites, i, j, pieces_f[best[1]], best[2])
    if w is None:
        return edge_test_exact(body, sites, i, j)
    scans = [PieceScan(_STATUS[status[k]], [tuple(v) for v in free[k, :nfree[k]].tolist()],
                       [tuple(v) for v in width[k, :nfree[k]].tolist()], None) for k in range(len(X))]
    return EdgeResult(True, w, _geometry_from_scan(pieces_f, scans), None, "float")


def edge_exists(body: ConvexBody, sites: SiteSet, i: int, j: int) -> Optional[Homothet]:
    """Witness homothet for edge ij, or None if the cells share no edge."""
    if i == j:
        raise ValueError("edge_exists needs two distinct sites")
    return edge_test(body, sites, i, j).witness


# ------------------------------------------------------------------ domination intervals


class Strictness(Enum):
    STRICT = "Strict"
    TIE_LEX_LOSES = "TieLexLoses"


class DominationInterval(NamedTuple):
    piece_index: int
    t_lo: object
    t_hi: object  # None for unbounded
    dominator: int
    strictness: Strictness


def domination_intervals(body: ConvexBody, sites: SiteSet, i: int, j: int) -> list[DominationInterval]:
    """Exact per-competitor intervals along the bisector of sites i and j.

    Strict intervals are where r is strictly closer; tie intervals are
    stretches where r is exactly as close and lexicographically smaller
    than both.
    """
    bis = bisector(body, sites.points[i], sites.points[j])
    out = []
    low = min(sites.rank[i], sites.rank[j])
    for k, pc in enumerate(bis.pieces):
        for r in range(len(sites)):
            if r in (i, j):
                continue
            A, B = _form_coeffs(body.forms, pc, sites.points[r])
            okn, nl, nu = _interval_exact(A, B, strict=True)
            end = Fraction(1) if pc.bounded else None

            def clip(lo, hi):
                lo = Fraction(0) if lo is None or lo < 0 else lo
                if end is not None:
                    hi = end if hi is None or hi > end else hi
                return lo, hi

            if okn:
                lo, hi = clip(nl, nu)
                if hi is None or lo < hi:
                    out.append(DominationInterval(k, lo, hi, r, Strictness.STRICT))
                continue
            okz, zl, zu = _interval_exact(A, B, strict=False)
            if okz and sites.rank[r] < low:
                lo, hi = clip(zl, zu)
                if hi is None or lo < hi:
                    out.append(DominationInterval(k, lo, hi, r, Strictness.TIE_LEX_LOSES))
    return out


# ------------------------------------------------------------------ graph


@dataclass
class DelaunayGraph:
    body: ConvexBody
    sites: SiteSet
    edges: tuple[tuple[int, int], ...]
    witnesses: dict
    geometry: dict = field(repr=False, default_factory=dict)
    stats: dict = field(repr=False, default_factory=dict)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(len(self.sites))]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.witnesses

    def exact_geometry(self, a: int, b: int) -> EdgeGeometry:
        key = (min(a, b), max(a, b))
        g = self.geometry.get(key)
        if g is None or not g.exact:
            res = edge_test_exact(self.body, self.sites, *key)
            assert res.exists, f"edge {key} lost under exact recomputation"
            g = res.geometry
            self.geometry[key] = g
        return g

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)


def _candidate_pairs(sites: SiteSet):
    n = len(sites)
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def build_delaunay(body: ConvexBody, sites: SiteSet) -> DelaunayGraph:
    """Test every pair; edges are sorted index pairs."""
    edges, wit, geo = [], {}, {}
    stats = {"float": 0, "exact": 0}
    for i, j in _candidate_pairs(sites):
        res = edge_test(body, sites, i, j)
        stats[res.path] = stats.get(res.path, 0) + 1
        if res.exists:
            edges.append((i, j))
            wit[(i, j)] = res.witness
            geo[(i, j)] = res.geometry
    return DelaunayGraph(body, sites, tuple(edges), wit, geo, stats)


def verify_witness(body: ConvexBody, sites: SiteSet, edge, w: Homothet) -> bool:
    i, j = edge
    if classify(w, body, sites.points[i]) is not Location.BOUNDARY:
        return False
    if classify(w, body, sites.points[j]) is not Location.BOUNDARY:
        return False
    # sites clearly outside by the float gauge need no exact test
    pts = sites.points_f
    xf = np.array([float(w.center[0]), float(w.center[1])])
    lamf = float(w.scale)
    d = body.gauge_f(pts - xf)
    slack = 1e-9 * (1.0 + lamf + np.abs(pts - xf).max() * np.abs(body.forms_f).max())
    near = np.flatnonzero(d - lamf <= slack)
    return all(classify(w, body, sites.points[r]) is not Location.INTERIOR for r in near.tolist())


class PlanarityResult(NamedTuple):
    ok: bool
    violation: Optional[tuple]


def planarity_check(g: DelaunayGraph) -> PlanarityResult:
    """Exact pairwise test: only shared endpoints may touch."""
    pts = g.sites.points
    E = list(g.edges)
    P = g.sites.points_f
    lo = np.array([np.minimum(P[a], P[b]) for a, b in E]).reshape(-1, 2)
    hi = np.array([np.maximum(P[a], P[b]) for a, b in E]).reshape(-1, 2)
    for s in range(len(E)):
        a, b = E[s]
        for k in range(s + 1, len(E)):
            c, d = E[k]
            if np.any(lo[k] > hi[s] + 1e-9 * (1 + np.abs(hi[s]))) or np.any(hi[k] < lo[s] - 1e-9 * (1 + np.abs(lo[s]))):
                continue
            shared = {a, b} & {c, d}
            if not shared:
                if segments_intersect(pts[a], pts[b], pts[c], pts[d]):
                    return PlanarityResult(False, (E[s], E[k]))
            elif len(shared) == 1:
                o = shared.pop()
                x = b if a == o else a
                y = d if c == o else c
                if orient(pts[o], pts[x], pts[y]) == 0:
                    vx = (pts[x][0] - pts[o][0], pts[x][1] - pts[o][1])
                    vy = (pts[y][0] - pts[o][0], pts[y][1] - pts[o][1])
                    if vx[0] * vy[0] + vx[1] * vy[1] > 0:
                        return PlanarityResult(False, (E[s], E[k]))
    for a, b in E:
        for r in range(len(pts)):
            if r not in (a, b) and on_segment(pts[r], pts[a], pts[b], open_=True):
                return PlanarityResult(False, ((a, b), (r,)))
    return PlanarityResult(True, None)


def is_connected(g: DelaunayGraph) -> bool:
    n = len(g.sites)
    if n <= 1:
        return True
    seen = {0}
    stack = [0]
    adj = g.adjacency
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


__all__ = [
    "Bisector",
    "CoincidentSites",
    "DelaunayGraph",
    "DominationInterval",
    "EdgeGeometry",
    "Piece",
    "PieceKind",
    "PlanarityResult",
    "SiteSet",
    "Strictness",
    "bisector",
    "build_delaunay",
    "domination_intervals",
    "edge_exists",
    "edge_test",
    "edge_test_exact",
    "is_connected",
    "make_sites",
    "planarity_check",
    "verify_witness",
]
