"""Deterministic site generators with rational coordinates."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .convex_shape import ConvexBody, circle_point
from .delaunay import SiteSet, make_sites

QUANTUM = Fraction(1, 10**6)
DEFAULT_WINDOW = (0, 0, 100, 100)
GENERATORS = ("uniform", "grid", "collinear", "cocircular", "clustered", "cohomothetic", "file")


class DuplicatePointsUnavoidable(ValueError):
    pass


def _q(v: float) -> Fraction:
    return Fraction(round(v / float(QUANTUM))) * QUANTUM


def _window(window):
    x0, y0, x1, y1 = (Fraction(v) if not isinstance(v, float) else Fraction(repr(v)) for v in window)
    return x0, y0, x1, y1


def _distinct(make, n, rng, tries=200):
    pts, seen = [], set()
    for _ in range(tries * max(n, 1)):
        if len(pts) == n:
            break
        p = make(rng)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    if len(pts) < n:
        raise DuplicatePointsUnavoidable(f"could not draw {n} distinct points")
    return pts


def generate_sites(generator: str, n: int, seed: int, window=DEFAULT_WINDOW, *, body: ConvexBody | None = None,
                   path: str | None = None) -> SiteSet:
    """Site set for (generator, n, seed); identical inputs give identical output."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x0, y0, x1, y1 = _window(window)
    W, H = x1 - x0, y1 - y0
    rng = np.random.default_rng([seed, n, GENERATORS.index(generator) if generator in GENERATORS else 99])

    if generator == "file":
        from .io import load_points

        if path is None:
            raise ValueError("file generator needs a path")
        return load_points(path)

    if generator == "uniform":
        pts = _distinct(lambda r: (x0 + _q(r.uniform(0, 1) * float(W)), y0 + _q(r.uniform(0, 1) * float(H))), n, rng)
    elif generator == "grid":
        k = math.isqrt(n - 1) + 1 if n > 1 else 1
        if k > 1 and min(W, H) / (k - 1) < QUANTUM:
            raise DuplicatePointsUnavoidable(f"{n} grid points do not fit the window")
        step_x = W / (k - 1) if k > 1 else 0
        step_y = H / (k - 1) if k > 1 else 0
        lattice = [(x0 + a * step_x, y0 + b * step_y) for b in range(k) for a in range(k)]
        if len(lattice) == n:
            pts = lattice
        else:
            idx = sorted(rng.choice(len(lattice), size=n, replace=False).tolist())
            pts = [lattice[i] for i in idx]
    elif generator == "collinear":
        ang = rng.uniform(0, math.pi)
        dx = Fraction(math.cos(ang)).limit_denominator(20)
        dy = Fraction(math.sin(ang)).limit_denominator(20)
        if dx == 0 and dy == 0:
            dx = Fraction(1)
        c = (x0 + W / 2, y0 + H / 2)
        # parameter range keeping the line inside the window
        lim = min(
            (W / 2) / abs(dx) if dx else math.inf,
            (H / 2) / abs(dy) if dy else math.inf,
        )
        lim = Fraction(lim) * Fraction(9, 10)
        pts = _distinct(lambda r: (lambda t: (c[0] + t * dx, c[1] + t * dy))(_q(r.uniform(-1, 1) * float(lim))), n, rng)
    elif generator == "cocircular":
        c = (x0 + W / 2, y0 + H / 2)
        R = _q(float(min(W, H)) * 0.4)
        pts = _distinct(lambda r: (lambda z: (c[0] + R * z[0], c[1] + R * z[1]))(circle_point(r.uniform(0, 2 * math.pi), 500)),
                        n, rng)
    elif generator == "cohomothetic":
        if body is None:
            raise ValueError("cohomothetic generator needs the body")
        c = (x0 + W / 2, y0 + H / 2)
        rel = body.rel
        ext = max(max(abs(v[0]), abs(v[1])) for v in rel)
        R = _q(float(min(W, H)) * 0.4 / float(ext))
        m = len(rel)

        def on_boundary(r):
            k = int(r.integers(m))
            t = Fraction(int(r.integers(0, 1000)), 1000)
            a, b = rel[k], rel[(k + 1) % m]
            return (c[0] + R * (a[0] + t * (b[0] - a[0])), c[1] + R * (a[1] + t * (b[1] - a[1])))

        pts = _distinct(on_boundary, n, rng)
    elif generator == "clustered":
        k = max(1, min(4, n // 4))
        centers = [(rng.uniform(0.2, 0.8) * float(W), rng.uniform(0.2, 0.8) * float(H)) for _ in range(k)]
        spread = 0.05 * float(min(W, H))

        def draw(r):
            cx, cy = centers[int(r.integers(k))]
            x = min(max(cx + r.normal() * spread, 0.0), float(W))
            y = min(max(cy + r.normal() * spread, 0.0), float(H))
            return (x0 + _q(x), y0 + _q(y))

        pts = _distinct(draw, n, rng)
    else:
        raise ValueError(f"unknown generator {generator!r}")
    return make_sites(pts)


__all__ = ["DEFAULT_WINDOW", "DuplicatePointsUnavoidable", "GENERATORS", "generate_sites"]
