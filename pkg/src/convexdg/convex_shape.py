"""Convex polygonal bodies, the convex distance they induce, and boundary arcs.

A body is stored as a CCW vertex list plus an interior origin. Writing the
vertices relative to the origin as ``c_k``, edge ``k`` (from ``c_k`` to
``c_{k+1}``) has outward normal ``n_k`` and support value ``h_k = n_k . c_k``.
The gauge is ``max_k (n_k / h_k) . v`` and ``d_C(x, y) = gauge(y - x)``.
All of this is exact over the rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .exact import Number, Point, cross, dot, orient_exact, sub, to_point, to_points


class ShapeError(ValueError):
    pass


class TooFewVertices(ShapeError):
    pass


class NonConvex(ShapeError):
    pass


class OriginNotInterior(ShapeError):
    pass


class PointNotOnBoundary(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class Location(Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class ConvexBody:
    """Strictly convex CCW polygon with a designated interior origin.

    Build through :func:`validate_body`; the constructor trusts its input.
    """

    vertices: tuple[Point, ...]
    origin: Point

    @property
    def m(self) -> int:
        return len(self.vertices)

    @cached_property
    def rel(self) -> tuple[Point, ...]:
        ox, oy = self.origin
        return tuple((x - ox, y - oy) for x, y in self.vertices)

    @cached_property
    def forms(self) -> tuple[Point, ...]:
        """Gauge coefficients g_k with gauge(v) = max_k g_k . v."""
        out = []
        rel = self.rel
        m = len(rel)
        for k in range(m):
            a, b = rel[k], rel[(k + 1) % m]
            n = (b[1] - a[1], a[0] - b[0])
            h = n[0] * a[0] + n[1] * a[1]
            out.append((n[0] / h, n[1] / h))
        return tuple(out)

    @cached_property
    def rel_f(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.rel])

    @cached_property
    def forms_f(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.forms])

    @cached_property
    def vertices_f(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.vertices])

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        v = self.vertices_f
        return np.hypot(*(np.roll(v, -1, axis=0) - v).T)

    @cached_property
    def perimeter(self) -> float:
        return float(self.edge_lengths.sum())

    def gauge(self, v) -> Fraction:
        return max(g[0] * v[0] + g[1] * v[1] for g in (self.forms[k] for k in self._near_max(v)))

    def _near_max(self, v, rel: float = 1e-9):
        """Indices of forms that can attain the max at ``v``; all of them if float is unreliable."""
        m = len(self.vertices)
        if m <= 8:
            return range(m)
        vf = np.array([float(v[0]), float(v[1])])
        if not np.isfinite(vf).all():
            return range(m)
        vals = self.forms_f @ vf
        top = vals.max()
        slack = rel * (1.0 + np.abs(vf).sum() * self._form_scale)
        return np.flatnonzero(vals >= top - slack).tolist()

    @cached_property
    def _form_scale(self) -> float:
        return float(np.abs(self.forms_f).max())

    def gauge_f(self, v: np.ndarray) -> np.ndarray:
        """Vectorised float gauge over the last axis of ``v``."""
        return (np.asarray(v, dtype=float) @ self.forms_f.T).max(axis=-1)

    def with_origin(self, origin: Sequence[Number]) -> "ConvexBody":
        return validate_body(self.vertices, origin)

    def is_centrally_symmetric(self) -> bool:
        m = self.m
        if m % 2:
            return False
        h = m // 2
        return all(
            self.rel[i][0] == -self.rel[i + h][0] and self.rel[i][1] == -self.rel[i + h][1]
            for i in range(h)
        )


@dataclass(frozen=True)
class Homothet:
    """The set center + scale * C (C taken relative to its origin)."""

    center: Point
    scale: Fraction

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError("homothet scale must be non-negative")

    def vertices(self, body: ConvexBody) -> list[Point]:
        cx, cy = self.center
        s = self.scale
        return [(cx + s * x, cy + s * y) for x, y in body.rel]


class BoundaryPoint(NamedTuple):
    edge_index: int
    t: Fraction


class ConeForm(NamedTuple):
    """d_C(x, apex) = a*x1 + b*x2 + c while x - apex lies in the sector.

    The sector is spanned by the rays apex + s*ray_a and apex + s*ray_b,
    s >= 0, turning counter-clockwise from ``ray_a`` to ``ray_b``.
    """

    apex: Point
    ray_a: Point
    ray_b: Point
    a: Fraction
    b: Fraction
    c: Fraction

    def value(self, x) -> Fraction:
        return self.a * x[0] + self.b * x[1] + self.c

    def contains(self, x) -> bool:
        v = sub(x, self.apex)
        return cross(self.ray_a, v) >= 0 and cross(v, self.ray_b) >= 0


def validate_body(raw_vertices: Sequence[Sequence[Number]], origin: Sequence[Number]) -> ConvexBody:
    """Normalise a vertex list into a :class:`ConvexBody`.

    Reorients clockwise input, drops repeated points and merges collinear
    runs. Anything that is not a simple convex polygon with the origin
    strictly inside is rejected.
    """
    pts = list(to_points(raw_vertices))
    o = to_point(origin)
    if len(pts) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(pts)}")

    dedup = []
    for p in pts:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        raise TooFewVertices("fewer than 3 distinct vertices")

    area2 = sum(cross(dedup[i], dedup[(i + 1) % len(dedup)]) for i in range(len(dedup)))
    if area2 == 0:
        raise TooFewVertices("vertices are collinear")
    if area2 < 0:
        dedup.reverse()

    changed = True
    while changed and len(dedup) >= 3:
        changed = False
        m = len(dedup)
        for i in range(m):
            a, b, c = dedup[i - 1], dedup[i], dedup[(i + 1) % m]
            if orient_exact(a, b, c) == 0:
                if dot(sub(b, a), sub(c, b)) < 0:
                    raise NonConvex(f"boundary folds back at {b}")
                del dedup[i]
                changed = True
                break
    if len(dedup) < 3:
        raise TooFewVertices("fewer than 3 vertices after merging collinear runs")

    m = len(dedup)
    for i in range(m):
        if orient_exact(dedup[i - 1], dedup[i], dedup[(i + 1) % m]) < 0:
            raise NonConvex(f"reflex vertex at {dedup[i]}")
    # all left turns: convex iff the edge directions wind exactly once
    turn = 0.0
    for i in range(m):
        a, b, c = dedup[i - 1], dedup[i], dedup[(i + 1) % m]
        u, v = sub(b, a), sub(c, b)
        turn += math.atan2(float(cross(u, v)), float(dot(u, v)))
    if abs(turn - 2 * math.pi) > 1e-6:
        raise NonConvex("vertex sequence winds more than once")

    for i in range(m):
        if orient_exact(dedup[i], dedup[(i + 1) % m], o) <= 0:
            raise OriginNotInterior(f"origin {o} is not strictly inside the polygon")
    return ConvexBody(tuple(dedup), o)


def distance(body: ConvexBody, x, y) -> Fraction:
    """Smallest lambda >= 0 with y in x + lambda*C."""
    x, y = to_point(x), to_point(y)
    if x == y:
        return Fraction(0)
    return body.gauge(sub(y, x))


def distance_f(body: ConvexBody, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return body.gauge_f(np.asarray(y, dtype=float) - np.asarray(x, dtype=float))


def cone_decomposition(body: ConvexBody, site) -> list[ConeForm]:
    """Linear pieces of ``x -> d_C(x, site)``.

    d(x, s) = max_k g_k . (s - x); form k is the active one exactly when
    s - x lies in the cone over edge k, i.e. x - s lies in the reflected
    cone spanned by -c_k and -c_{k+1}.
    """
    s = to_point(site)
    rel, forms = body.rel, body.forms
    m = len(rel)
    out = []
    for k in range(m):
        g = forms[k]
        a, b = rel[k], rel[(k + 1) % m]
        out.append(ConeForm(s, (-a[0], -a[1]), (-b[0], -b[1]), -g[0], -g[1], g[0] * s[0] + g[1] * s[1]))
    return out


def classify(h: Homothet, body: ConvexBody, p) -> Location:
    d = distance(body, h.center, p)
    lam = Fraction(h.scale)
    if d < lam:
        return Location.INTERIOR
    if d == lam:
        return Location.BOUNDARY
    return Location.EXTERIOR


# ---------------------------------------------------------------- boundary


def boundary_point_xy(h: Homothet, body: ConvexBody, bp: BoundaryPoint) -> Point:
    m = body.m
    i = bp.edge_index % m
    t = Fraction(bp.t)
    a, b = body.rel[i], body.rel[(i + 1) % m]
    cx, cy = h.center
    s = Fraction(h.scale)
    return (cx + s * (a[0] + t * (b[0] - a[0])), cy + s * (a[1] + t * (b[1] - a[1])))


def locate_boundary_point(h: Homothet, body: ConvexBody, p) -> BoundaryPoint:
    """Express a point of the homothet boundary as (edge_index, t)."""
    p = to_point(p)
    s = Fraction(h.scale)
    if s == 0:
        if p == h.center:
            return BoundaryPoint(0, Fraction(0))
        raise PointNotOnBoundary(f"{p} is not the degenerate homothet's center")
    z = ((p[0] - h.center[0]) / s, (p[1] - h.center[1]) / s)
    rel = body.rel
    m = len(rel)
    # edges whose form is (nearly) maximal come first; the full scan is the fallback
    near = body._near_max(z)
    seen = set(near)
    order = list(near) + [i for i in range(m) if i not in seen]
    for i in order:
        a, b = rel[i], rel[(i + 1) % m]
        e = sub(b, a)
        w = sub(z, a)
        if cross(e, w) != 0:
            continue
        t = dot(w, e) / dot(e, e)
        if 0 <= t < 1:
            return BoundaryPoint(i, t)
    raise PointNotOnBoundary(f"{p} is not on the homothet boundary")


def _normalize(bp: BoundaryPoint, m: int) -> BoundaryPoint:
    i, t = bp.edge_index, Fraction(bp.t)
    if not (0 <= t <= 1):
        raise PointNotOnBoundary(f"edge parameter {t} outside [0, 1]")
    if not (0 <= i < m):
        raise PointNotOnBoundary(f"edge index {i} outside [0, {m})")
    if t == 1:
        return BoundaryPoint((i + 1) % m, Fraction(0))
    return BoundaryPoint(i, t)


def _position(body: ConvexBody, bp: BoundaryPoint) -> float:
    cum = np.concatenate(([0.0], np.cumsum(body.edge_lengths)))
    return float(cum[bp.edge_index] + float(bp.t) * body.edge_lengths[bp.edge_index])


def arc_length(h: Homothet, body: ConvexBody, from_: BoundaryPoint, to: BoundaryPoint, ccw: bool = True) -> float:
    """Length of the boundary chain of ``h`` from ``from_`` to ``to``.

    Coinciding endpoints give the full perimeter.
    """
    m = body.m
    a, b = _normalize(from_, m), _normalize(to, m)
    per = body.perimeter
    if a == b:
        return float(h.scale) * per
    d = (_position(body, b) - _position(body, a)) % per
    if not ccw:
        d = per - d
    return float(h.scale) * d


def _chain_vertices(m: int, a: BoundaryPoint, b: BoundaryPoint) -> list[int]:
    """Body vertex indices met strictly between a and b going CCW."""
    out = []
    i = a.edge_index
    if a.edge_index == b.edge_index and a.t < b.t:
        return out
    while True:
        i = (i + 1) % m
        if i == b.edge_index and b.t == 0:
            break
        out.append(i)
        if i == b.edge_index:
            break
    return out


def upper_arc(h: Homothet, body: ConvexBody, x, y, axis: tuple) -> float:
    """Length of the boundary chain between x and y that stays on/above ``axis``.

    ``axis`` is an oriented line ``(point, direction)``; "above" is the left
    side.
    """
    ap, ad = to_point(axis[0]), to_point(axis[1])
    if ad == (0, 0):
        raise PreconditionViolated("axis direction is zero")
    if cross(ad, sub(h.center, ap)) != 0:
        raise PreconditionViolated("homothet center is not on the axis")
    x, y = to_point(x), to_point(y)
    for name, p in (("x", x), ("y", y)):
        if cross(ad, sub(p, ap)) < 0:
            raise PreconditionViolated(f"{name} lies below the axis")
    bx = locate_boundary_point(h, body, x)
    by = locate_boundary_point(h, body, y)
    m = body.m
    if bx == by:
        return 0.0
    c, sc = h.center, Fraction(h.scale)
    rel = body.rel

    cf = (float(c[0]) - float(ap[0]), float(c[1]) - float(ap[1]))
    adf = (float(ad[0]), float(ad[1]))
    scf = float(sc)
    tol = 1e-9 * (abs(adf[0]) + abs(adf[1])) * (abs(cf[0]) + abs(cf[1]) + scf * float(np.abs(body.rel_f).max()) + 1.0)

    def above(i):
        v = rel[i]
        vf = body.rel_f[i]
        guess = adf[0] * (cf[1] + scf * vf[1]) - adf[1] * (cf[0] + scf * vf[0])
        if abs(guess) > tol:
            return guess > 0
        return cross(ad, (c[0] + sc * v[0] - ap[0], c[1] + sc * v[1] - ap[1])) >= 0

    for ccw, (s, e) in ((True, (bx, by)), (False, (by, bx))):
        if all(above(i) for i in _chain_vertices(m, s, e)):
            return arc_length(h, body, bx, by, ccw=ccw)
    raise PreconditionViolated("neither boundary chain stays above the axis")


# ---------------------------------------------------------------- presets


def _circle_point_base(phi: float, max_den: int) -> Point:
    # rational point on the unit circle near angle phi in [0, pi/4]
    s = Fraction(math.tan(phi / 2)).limit_denominator(max_den)
    d = 1 + s * s
    return ((1 - s * s) / d, 2 * s / d)


def circle_point(theta: float, max_den: int = 2000) -> Point:
    """Exact rational point on the unit circle close to angle ``theta``.

    Built from one octant and mirrored, so sets of angles that are
    symmetric under the dihedral group of the square stay exactly
    symmetric.
    """
    q = theta / (math.pi / 2)
    quad = math.floor(q + 1e-12)
    phi = theta - quad * math.pi / 2
    if phi < 0:
        phi = 0.0
    if phi <= math.pi / 4 + 1e-12:
        x, y = _circle_point_base(phi, max_den)
    else:
        yy, xx = _circle_point_base(math.pi / 2 - phi, max_den)
        x, y = xx, yy
    for _ in range(quad % 4):
        x, y = -y, x
    return (x, y)


def regular_polygon(k: int, start: float | None = None, max_den: int = 2000) -> ConvexBody:
    """Rational regular k-gon inscribed in the unit circle, origin at 0.

    Even k starts at angle 0, odd k at pi/2 (apex up).
    """
    if k < 3:
        raise TooFewVertices(f"regular polygon needs k >= 3, got {k}")
    if start is None:
        start = 0.0 if k % 2 == 0 else math.pi / 2
    pts = [circle_point((start + 2 * math.pi * j / k) % (2 * math.pi), max_den) for j in range(k)]
    return validate_body(pts, (0, 0))


def square() -> ConvexBody:
    return validate_body([(-1, -1), (1, -1), (1, 1), (-1, 1)], (0, 0))


def random_convex(n: int, seed: int, max_den: int = 1000) -> ConvexBody:
    """Random convex n-gon: exact points on a random ellipse, origin at the vertex mean."""
    if n < 3:
        raise TooFewVertices(f"random polygon needs n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    while True:
        ang = np.sort(rng.uniform(0, 2 * math.pi, n))
        gaps = np.diff(np.concatenate((ang, [ang[0] + 2 * math.pi])))
        if gaps.max() < math.pi * 0.9 and gaps.min() > 0.05:
            break
    ax = Fraction(rng.uniform(0.6, 1.4)).limit_denominator(100)
    ay = Fraction(rng.uniform(0.6, 1.4)).limit_denominator(100)
    pts = []
    for t in ang:
        cx, cy = circle_point(float(t), max_den)
        pts.append((ax * cx, ay * cy))
    o = (sum(p[0] for p in pts) / n, sum(p[1] for p in pts) / n)
    return validate_body(pts, o)


def preset(name: str) -> ConvexBody:
    """Resolve a preset name such as ``square`` or ``regular-64``.

    ``random-convex`` accepts ``random-convex-<n>-<seed>`` (default 7 and 0).
    """
    name = name.strip().lower()
    if name == "square":
        return square()
    if name in ("equilateral-triangle", "triangle"):
        return regular_polygon(3)
    if name == "pentagon":
        return regular_polygon(5)
    if name.startswith("regular-"):
        return regular_polygon(int(name.split("-", 1)[1]))
    if name.startswith("random-convex"):
        rest = [int(t) for t in name[len("random-convex"):].split("-") if t]
        n = rest[0] if rest else 7
        seed = rest[1] if len(rest) > 1 else 0
        return random_convex(n, seed)
    raise ValueError(f"unknown shape preset {name!r}")


__all__ = [
    "BoundaryPoint",
    "ConeForm",
    "ConvexBody",
    "Homothet",
    "Location",
    "NonConvex",
    "OriginNotInterior",
    "PointNotOnBoundary",
    "PreconditionViolated",
    "ShapeError",
    "TooFewVertices",
    "arc_length",
    "boundary_point_xy",
    "classify",
    "circle_point",
    "cone_decomposition",
    "distance",
    "distance_f",
    "locate_boundary_point",
    "preset",
    "random_convex",
    "regular_polygon",
    "square",
    "upper_arc",
    "validate_body",
]
