"""Shape parameters alpha_C, kappa_{C,0}, kappa_C and the stretch bound.

Sampling and refinement run in floating point; ``base_angles`` is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .convex_shape import (
    BoundaryPoint,
    ConvexBody,
    OriginNotInterior,
    _normalize,
    validate_body,
)
from .exact import Point, cross, dot, orient_exact, sub, to_point

GOLDEN = (math.sqrt(5) - 1) / 2


class DegenerateChord(ValueError):
    pass


class ParamOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class ChordSample:
    direction: float
    x: tuple[float, float]
    y: tuple[float, float]
    chord_len: float
    chain_len_1: float
    chain_len_2: float

    @property
    def ratio(self) -> float:
        return max(self.chain_len_1, self.chain_len_2) / self.chord_len


@dataclass(frozen=True)
class ShapeParams:
    alpha: float
    kappa0: float
    kappa: float
    origin_star: Point
    t_triangulation: float
    t_general: float
    tolerance: float

    def bound(self, is_triangulation: bool) -> float:
        return self.t_triangulation if is_triangulation else self.t_general


# ------------------------------------------------------------ base angles


def _abs_point(body: ConvexBody, bp: BoundaryPoint) -> Point:
    m = body.m
    a, b = body.vertices[bp.edge_index], body.vertices[(bp.edge_index + 1) % m]
    t = Fraction(bp.t)
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _chain(body: ConvexBody, a: BoundaryPoint, b: BoundaryPoint) -> list[Point]:
    """Points of the CCW chain from a to b, endpoints included."""
    m = body.m
    pts = [_abs_point(body, a)]
    i = a.edge_index
    if not (a.edge_index == b.edge_index and a.t < b.t):
        while True:
            i = (i + 1) % m
            if i == b.edge_index and b.t == 0:
                break
            pts.append(body.vertices[i])
            if i == b.edge_index:
                break
    pts.append(_abs_point(body, b))
    return pts


def _apex_on_chain(chain: list[Point], mid: Point, u: Point) -> Point:
    f = [dot(sub(z, mid), u) for z in chain]
    hits = [chain[k] for k in range(len(chain)) if f[k] == 0]
    for k in range(len(chain) - 1):
        if f[k] * f[k + 1] < 0:
            s = f[k] / (f[k] - f[k + 1])
            a, b = chain[k], chain[k + 1]
            hits.append((a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])))
    assert len(hits) == 1, "a convex chain meets the perpendicular bisector once"
    return hits[0]


def base_angles(body: ConvexBody, x: BoundaryPoint, y: BoundaryPoint) -> tuple[float, float]:
    """Base angles of the isosceles triangles on xy with apex on each chain.

    The first angle belongs to the CCW chain from x to y, the second to the
    chain from y back to x.
    """
    m = body.m
    x, y = _normalize(BoundaryPoint(*x), m), _normalize(BoundaryPoint(*y), m)
    px, py = _abs_point(body, x), _abs_point(body, y)
    if px == py:
        raise DegenerateChord("x and y coincide")
    u = sub(py, px)
    mid = ((px[0] + py[0]) / 2, (px[1] + py[1]) / 2)
    uu = dot(u, u)
    out = []
    for a, b in ((x, y), (y, x)):
        apex = _apex_on_chain(_chain(body, a, b), mid, u)
        tan = 2 * abs(cross(u, sub(apex, mid))) / uu
        out.append(math.atan(float(tan)))
    return out[0], out[1]


# ------------------------------------------------------------ alpha_C


class _Poly:
    """Float view of a body in absolute coordinates."""

    def __init__(self, body: ConvexBody):
        self.V = body.vertices_f
        E = np.roll(self.V, -1, axis=0) - self.V
        self.N = np.stack([E[:, 1], -E[:, 0]], axis=1)
        self.H = np.einsum("ij,ij->i", self.N, self.V)
        self.L = np.hypot(E[:, 0], E[:, 1])
        self.E = E
        self.cum = np.concatenate(([0.0], np.cumsum(self.L)))
        self.P = float(self.cum[-1])
        self.m = len(self.V)

    def point_at(self, s: np.ndarray) -> np.ndarray:
        s = np.mod(np.asarray(s, dtype=float), self.P)
        k = np.clip(np.searchsorted(self.cum, s, side="right") - 1, 0, self.m - 1)
        t = (s - self.cum[k]) / self.L[k]
        return self.V[k] + t[..., None] * self.E[k]

    def samples(self, count: int) -> np.ndarray:
        """Perimeter positions: every vertex plus length-proportional fill."""
        count = max(count, self.m)
        extra = count - self.m
        per_edge = np.floor(extra * self.L / self.P).astype(int)
        short = extra - per_edge.sum()
        order = np.argsort(-(extra * self.L / self.P - per_edge), kind="stable")
        per_edge[order[:short]] += 1
        out = []
        for k in range(self.m):
            c = per_edge[k] + 1
            out.extend(self.cum[k] + self.L[k] * np.arange(c) / c)
        return np.array(out)


def _alpha_obj(poly: _Poly, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """tan of max(alpha, alpha') / 2 for chord arrays x, y of shape (..., 2)."""
    M = 0.5 * (x + y)
    u = y - x
    d = np.stack([-u[..., 1], u[..., 0]], axis=-1)
    nd = d @ poly.N.T
    nm = poly.H - M @ poly.N.T
    with np.errstate(divide="ignore", invalid="ignore"):
        r = nm / nd
    hi = np.where(nd > 0, r, np.inf).min(axis=-1)
    lo = np.where(nd < 0, r, -np.inf).max(axis=-1)
    return np.maximum(hi, -lo)


def _golden_min(f, a: float, b: float, tol: float):
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def alpha_C(body: ConvexBody, tol: float = 1e-3, samples: int = 256, return_pair: bool = False):
    """min over chords xy of the larger base angle, in radians."""
    poly = _Poly(body)
    s = poly.samples(samples)
    pts = poly.point_at(s)
    K = len(s)
    best = np.full(K, np.inf)
    arg = np.zeros(K, dtype=int)
    for i in range(K):
        j = np.arange(i + 1, K)
        if len(j) == 0:
            continue
        v = _alpha_obj(poly, np.broadcast_to(pts[i], (len(j), 2)), pts[j])
        k = int(np.argmin(v))
        best[i], arg[i] = v[k], j[k]
    seeds = np.argsort(best, kind="stable")[:4]
    spacing = poly.P / K

    def F(a, b):
        if abs(((a - b) + poly.P / 2) % poly.P - poly.P / 2) < 1e-12 * poly.P:
            return np.inf
        return float(_alpha_obj(poly, poly.point_at(np.array([a])), poly.point_at(np.array([b])))[0])

    ttol = max(1e-12 * poly.P, 1e-3 * tol * spacing)
    top_val, top_pair = np.inf, (0.0, 0.0)
    for i in seeds:
        a0, b0 = float(s[i]), float(s[arg[i]])
        val = float(best[i])
        h = 1.5 * spacing
        for _ in range(8):
            inner = {}

            def G(a):
                bb, vv = _golden_min(lambda b: F(a, b), b0 - h, b0 + h, ttol)
                inner[a] = bb
                return vv

            a1, v1 = _golden_min(G, a0 - h, a0 + h, ttol)
            if v1 < val:
                old = val
                a0, b0, val = a1, inner[a1], v1
                if math.atan(2 * old) - math.atan(2 * val) < tol:
                    break
            else:
                break
            h *= 0.5
        if val < top_val:
            top_val, top_pair = val, (a0, b0)
    alpha = math.atan(2 * top_val)
    if return_pair:
        return alpha, (poly.point_at(np.array([top_pair[0]]))[0], poly.point_at(np.array([top_pair[1]]))[0])
    return alpha


# ------------------------------------------------------------ kappa


class _ChordEval:
    def __init__(self, body: ConvexBody, origin):
        self.poly = _Poly(body)
        o = np.asarray(origin, dtype=float)
        self.o = o
        slack = self.poly.H - self.poly.N @ o
        if np.any(slack <= 0):
            raise OriginNotInterior(f"origin {tuple(o)} is not strictly inside")
        self.G = self.poly.N / slack[:, None]

    def __call__(self, theta: np.ndarray):
        th = np.asarray(theta, dtype=float)
        e = np.stack([np.cos(th), np.sin(th)], axis=-1)
        gp = e @ self.G.T
        gn = -gp
        kp, kn = gp.argmax(axis=-1), gn.argmax(axis=-1)
        rp = 1.0 / np.take_along_axis(gp, kp[..., None], -1)[..., 0]
        rn = 1.0 / np.take_along_axis(gn, kn[..., None], -1)[..., 0]
        x = self.o + rp[..., None] * e
        y = self.o - rn[..., None] * e
        poly = self.poly
        dx, dy = x - poly.V[kp], y - poly.V[kn]
        sx = poly.cum[kp] + np.hypot(dx[..., 0], dx[..., 1])
        sy = poly.cum[kn] + np.hypot(dy[..., 0], dy[..., 1])
        l1 = np.mod(sy - sx, poly.P)
        l2 = poly.P - l1
        chord = rp + rn
        return np.maximum(l1, l2) / chord, x, y, chord, l1, l2


def kappa_origin(body: ConvexBody, origin=None, tol: float = 1e-3) -> tuple[float, ChordSample]:
    """max over chords through ``origin`` of longer chain / chord length."""
    if origin is None:
        origin = body.origin
    o = np.array([float(origin[0]), float(origin[1])])
    ev = _ChordEval(body, o)
    V = ev.poly.V
    cand = np.sort(np.mod(np.arctan2(V[:, 1] - o[1], V[:, 0] - o[0]), math.pi))
    cand = np.unique(cand)
    lo = cand
    hi = np.concatenate((cand[1:], [cand[0] + math.pi]))
    nsamp = 10
    grid = lo[:, None] + (hi - lo)[:, None] * np.arange(nsamp + 1) / nsamp
    val = ev(grid)[0]
    j = val.argmax(axis=1)
    rows = np.arange(len(lo))
    a = grid[rows, np.maximum(j - 1, 0)]
    b = grid[rows, np.minimum(j + 1, nsamp)]
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = ev(c)[0], ev(d)[0]
    width_tol = min(tol, 1e-3) * 1e-7
    while np.max(b - a) > width_tol:
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = np.where(left, c, d)
        nfc = np.where(left, fc, fd)
        newpt = np.where(left, b - GOLDEN * (b - a), a + GOLDEN * (b - a))
        fnew = ev(newpt)[0]
        c = np.where(left, newpt, nc)
        fc = np.where(left, fnew, nfc)
        d = np.where(left, nc, newpt)
        fd = np.where(left, nfc, fnew)
    allth = np.concatenate((grid.ravel(), c, d))
    r, x, y, chord, l1, l2 = ev(allth)
    k = int(np.argmax(r))
    th = float(np.mod(allth[k], math.pi))
    sample = ChordSample(th, tuple(x[k]), tuple(y[k]), float(chord[k]), float(l1[k]), float(l2[k]))
    return float(r[k]), sample


def _inside_margin(poly: _Poly, p: np.ndarray) -> np.ndarray:
    return ((poly.H - p @ poly.N.T) / poly.L).min(axis=-1)


def kappa_C(body: ConvexBody, tol: float = 1e-3, grid: int = 33) -> tuple[float, Point]:
    """Minimise kappa_origin over interior origins.

    Returns the value at a rational origin close to the float optimum, so
    that downstream exact checks can use exactly this origin.
    """
    poly = _Poly(body)
    lo, hi = poly.V.min(axis=0), poly.V.max(axis=0)
    gx = np.linspace(lo[0], hi[0], grid)
    gy = np.linspace(lo[1], hi[1], grid)
    P = np.array([(x, y) for y in gy for x in gx])
    marg = _inside_margin(poly, P)
    safe = 0.05 * marg.max()
    cands = [p for p, mg in zip(P, marg) if mg >= safe]
    area_c = _area_centroid(poly.V)
    cands.append(area_c)
    cands.append(poly.V.mean(axis=0))
    cands.append(np.array([float(body.origin[0]), float(body.origin[1])]))

    def K(p):
        if _inside_margin(poly, p[None, :])[0] < 0.5 * safe:
            return np.inf
        return kappa_origin(body, p, tol)[0]

    vals = [K(p) for p in cands]
    order = np.argsort(vals, kind="stable")[:3]
    step0 = max((hi - lo).max() / (grid - 1), 1e-9)
    best_v, best_p = np.inf, None
    for idx in order:
        p, v = np.array(cands[idx], dtype=float), vals[idx]
        step = step0
        while step > tol * 1e-2:
            moved = False
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                q = p + step * np.array([dx, dy])
                vq = K(q)
                if vq < v - 1e-15:
                    p, v, moved = q, vq, True
                    break
            if not moved:
                step *= 0.5
        if v < best_v:
            best_v, best_p = v, p
    o = _rationalize_interior(body, best_p)
    kap = kappa_origin(body, o, tol)[0]
    return kap, o


def _area_centroid(V: np.ndarray) -> np.ndarray:
    x, y = V[:, 0], V[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    c = x * yn - xn * y
    A = c.sum() / 2
    return np.array([((x + xn) * c).sum() / (6 * A), ((y + yn) * c).sum() / (6 * A)])


def _rationalize_interior(body: ConvexBody, p: np.ndarray, max_den: int = 10**6) -> Point:
    for den in (max_den, max_den * 100, 10**12):
        o = (Fraction(float(p[0])).limit_denominator(den), Fraction(float(p[1])).limit_denominator(den))
        m = body.m
        if all(orient_exact(body.vertices[i], body.vertices[(i + 1) % m], o) > 0 for i in range(m)):
            return o
    raise OriginNotInterior(f"cannot place a rational origin near {tuple(p)}")


def stretch_bound(alpha: float, kappa: float, is_triangulation: bool) -> float:
    """2*kappa*max(3/sin(alpha/2), kappa), times kappa again for non-triangulations."""
    if not (0 < alpha < math.pi / 2):
        raise ParamOutOfRange(f"alpha={alpha} outside (0, pi/2)")
    if not kappa >= 1:
        raise ParamOutOfRange(f"kappa={kappa} below 1")
    t = 2 * kappa * max(3 / math.sin(alpha / 2), kappa)
    return t if is_triangulation else kappa * t


def shape_params(body: ConvexBody, tol: float = 1e-3) -> ShapeParams:
    alpha = alpha_C(body, tol)
    kappa0 = kappa_origin(body, body.origin, tol)[0]
    kappa, o = kappa_C(body, tol)
    if kappa > kappa0:
        # never report a worse origin than the stored one
        kappa, o = kappa0, body.origin
    t = stretch_bound(alpha, kappa, True)
    return ShapeParams(alpha, kappa0, kappa, o, t, kappa * t, tol)


def params_body(body: ConvexBody, params: ShapeParams) -> ConvexBody:
    """The body re-anchored at the kappa-optimal origin."""
    return validate_body(body.vertices, params.origin_star)


__all__ = [
    "ChordSample",
    "DegenerateChord",
    "ParamOutOfRange",
    "ShapeParams",
    "alpha_C",
    "base_angles",
    "kappa_C",
    "kappa_origin",
    "params_body",
    "shape_params",
    "stretch_bound",
]
