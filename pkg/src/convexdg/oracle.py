"""Brute-force Voronoi labelling on a grid, used to cross-check edge sets.

Each sample gets the (distance, lexicographic rank) minimiser. The per-site
offsets ``g_k . s`` are computed exactly and rounded once, and every sample
shares the same ``-g_k . x`` terms, so exact ties between sites stay exact
ties in floating point.

A 4-adjacent pair of samples with labels {i, j} counts towards edge ij only
after bisecting the connecting segment confirms a direct i/j transition.
Pairs reaching the count threshold are edges. Windows around unexplained
junctions and rarely seen pairs are re-sampled at higher zoom, and a ladder
of far-field windows catches edges whose shared boundary lies far away.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba as nb
import numpy as np

from .convex_shape import ConvexBody
from .delaunay import SiteSet


class ResolutionTooLow(ValueError):
    pass


@nb.njit(cache=True)
def _label_at(x, y, G, C, order, start, hint, F):
    """Lex-min nearest site at (x, y).

    ``start`` is a guess for the winner and ``hint[s]`` the form last seen
    active for site s; both only speed up pruning.
    """
    m = G.shape[0]
    n = C.shape[0]
    for k in range(m):
        F[k] = -(G[k, 0] * x + G[k, 1] * y)
    best = np.inf
    lab = -1
    if start >= 0:
        d = -np.inf
        kb = 0
        for k in range(m):
            v = C[start, k] + F[k]
            if v > d:
                d = v
                kb = k
        hint[start] = kb
        best = d
        lab = start
    for idx in range(n):
        s = order[idx]
        if s == lab:
            continue
        if C[s, hint[s]] + F[hint[s]] > best:
            continue
        d = -np.inf
        kb = 0
        for k in range(m):
            v = C[s, k] + F[k]
            if v > d:
                d = v
                kb = k
        hint[s] = kb
        if d < best or (d == best and idx < _rank_of(order, lab)):
            best = d
            lab = s
    return lab


@nb.njit(cache=True)
def _rank_of(order, s):
    for i in range(order.shape[0]):
        if order[i] == s:
            return i
    return order.shape[0]


@nb.njit(cache=True)
def _label_grid(x0, y0, hx, hy, nx, ny, G, C, order):
    out = np.empty((ny, nx), dtype=np.int32)
    hint = np.zeros(C.shape[0], dtype=np.int64)
    F = np.empty(G.shape[0])
    prev = -1
    for j in range(ny):
        y = y0 + j * hy
        for i in range(nx):
            prev = _label_at(x0 + i * hx, y, G, C, order, prev, hint, F)
            out[j, i] = prev
    return out


@nb.njit(cache=True)
def _confirm(ax, ay, bx, by, la, lb, G, C, order, steps):
    """Bisect a->b; True iff the labels change directly from la to lb."""
    hint = np.zeros(C.shape[0], dtype=np.int64)
    F = np.empty(G.shape[0])
    for _ in range(steps):
        mx = 0.5 * (ax + bx)
        my = 0.5 * (ay + by)
        lm = _label_at(mx, my, G, C, order, la, hint, F)
        if lm == la:
            ax, ay = mx, my
        elif lm == lb:
            bx, by = mx, my
        else:
            return False
    return True


@nb.njit(cache=True)
def _count_pairs(lab, x0, y0, hx, hy, G, C, order, threshold, steps):
    n = C.shape[0]
    ny, nx = lab.shape
    confirmed = np.zeros((n, n), dtype=np.int64)
    raw = np.zeros((n, n), dtype=np.int64)
    for j in range(ny):
        for i in range(nx):
            a = lab[j, i]
            for d in range(2):
                if d == 0:
                    if i + 1 >= nx:
                        continue
                    b = lab[j, i + 1]
                    bx, by = x0 + (i + 1) * hx, y0 + j * hy
                else:
                    if j + 1 >= ny:
                        continue
                    b = lab[j + 1, i]
                    bx, by = x0 + i * hx, y0 + (j + 1) * hy
                if a == b:
                    continue
                lo, hi = (a, b) if a < b else (b, a)
                raw[lo, hi] += 1
                if confirmed[lo, hi] >= threshold:
                    continue
                if _confirm(x0 + i * hx, y0 + j * hy, bx, by, a, b, G, C, order, steps):
                    confirmed[lo, hi] += 1
    return confirmed, raw


@nb.njit(cache=True)
def _junctions(lab):
    """Top-left corners of 2x2 blocks showing at least three labels."""
    ny, nx = lab.shape
    out = []
    for j in range(ny - 1):
        for i in range(nx - 1):
            a, b, c, d = lab[j, i], lab[j, i + 1], lab[j + 1, i], lab[j + 1, i + 1]
            k = 1
            if b != a:
                k += 1
            if c != a and c != b:
                k += 1
            if d != a and d != b and d != c:
                k += 1
            if k >= 3:
                out.append((j, i, a, b, c, d))
    return out


def _site_tables(body: ConvexBody, sites: SiteSet):
    G = body.forms_f.copy()
    C = np.array([[float(g[0] * s[0] + g[1] * s[1]) for g in body.forms] for s in sites.points])
    order = np.array(sites.lex_order, dtype=np.int64)
    return G, C, order


@dataclass
class OracleResult:
    edges: set
    confirmed: np.ndarray
    raw: np.ndarray
    labels: np.ndarray
    window: tuple
    zooms: int = 0
    far_windows: int = 0
    notes: list = field(default_factory=list)


# irrational-ish sub-pixel offsets keep samples off measure-zero sets
_JX, _JY = 0.5 * (math.sqrt(2) - 1), 0.5 * (math.sqrt(3) - 1)


def default_window(sites: SiteSet, margin: float = 0.5) -> tuple:
    P = sites.points_f
    lo, hi = P.min(axis=0), P.max(axis=0)
    size = max(float((hi - lo).max()), 1e-9)
    c = 0.5 * (lo + hi)
    half = 0.5 * size * (1 + 2 * margin)
    return (c[0] - half, c[1] - half, c[0] + half, c[1] + half)


class _Sampler:
    def __init__(self, body, sites, steps):
        self.G, self.C, self.order = _site_tables(body, sites)
        self.n = len(sites)
        self.steps = steps

    def grid(self, window, res):
        x0, y0, x1, y1 = window
        hx, hy = (x1 - x0) / res, (y1 - y0) / res
        gx0, gy0 = x0 + _JX * hx, y0 + _JY * hy
        lab = _label_grid(gx0, gy0, hx, hy, res, res, self.G, self.C, self.order)
        return lab, gx0, gy0, hx, hy

    def count(self, lab, gx0, gy0, hx, hy, threshold):
        return _count_pairs(lab, gx0, gy0, hx, hy, self.G, self.C, self.order, threshold, self.steps)


def sampled_voronoi_oracle(
    body: ConvexBody,
    sites: SiteSet,
    resolution: int = 1024,
    window: tuple | None = None,
    *,
    threshold: int | None = None,
    zoom_depth: int = 3,
    zoom_res: int = 128,
    far_res: int = 256,
    far_field: bool = True,
    far_zoom: bool = True,
    steps: int = 40,
) -> OracleResult:
    """Edge set of the sampled diagram on ``window`` (default: site box + 50%)."""
    if resolution < 64:
        raise ResolutionTooLow(f"resolution {resolution} < 64")
    n = len(sites)
    if window is None:
        window = default_window(sites)
    if threshold is None:
        threshold = max(1, resolution // 64)
    zoom_thr = max(1, zoom_res // 64)
    far_thr = max(1, far_res // 64)
    smp = _Sampler(body, sites, steps)
    lab, gx0, gy0, hx, hy = smp.grid(window, resolution)
    conf, raw = smp.count(lab, gx0, gy0, hx, hy, threshold)
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if conf[i, j] >= threshold}
    res = OracleResult(edges, conf, raw, lab, window)
    if n < 2:
        return res

    far_seeds = []
    # far field: concentric windows growing geometrically
    if far_field:
        cx, cy = 0.5 * (window[0] + window[2]), 0.5 * (window[1] + window[3])
        half = 0.5 * (window[2] - window[0])
        for s in range(1, 9):
            h = half * 8**s
            w = (cx - h, cy - h, cx + h, cy + h)
            l2, a, b, c, d = smp.grid(w, far_res)
            cf, rw = smp.count(l2, a, b, c, d, far_thr)
            res.far_windows += 1
            for i in range(n):
                for j in range(i + 1, n):
                    if cf[i, j] >= far_thr:
                        edges.add((i, j))
            far_seeds.append((l2, a, b, c, d, cf, rw))

    # zoom on unexplained junctions, under-sampled pairs and tiny cells
    def explained(labels):
        ls = sorted(set(int(v) for v in labels))
        return all((ls[a], ls[b]) in edges for a in range(len(ls)) for b in range(a + 1, len(ls)))

    todo = []
    P = sites.points_f

    def seeds_for(lab_, gx0_, gy0_, hx_, hy_, conf_, raw_, thr_):
        pts = []
        for (j, i, a, b, c, d) in _junctions(lab_):
            if not explained((a, b, c, d)):
                pts.append((gx0_ + (i + 0.5) * hx_, gy0_ + (j + 0.5) * hy_))
        weak = [(a, b) for a in range(n) for b in range(a + 1, n)
                if raw_[a, b] > 0 and (a, b) not in edges]
        if weak:
            weak_set = set(weak)
            ny, nx = lab_.shape
            ii = np.nonzero(lab_[:, :-1] != lab_[:, 1:])
            jj = np.nonzero(lab_[:-1, :] != lab_[1:, :])
            for (r, c_), (dr, dc) in ((ii, (0, 1)), (jj, (1, 0))):
                for y, x in zip(r.tolist(), c_.tolist()):
                    a, b = int(lab_[y, x]), int(lab_[y + dr, x + dc])
                    if (min(a, b), max(a, b)) in weak_set:
                        pts.append((gx0_ + (x + 0.5 * dc) * hx_, gy0_ + (y + 0.5 * dr) * hy_))
        counts = np.bincount(lab_.ravel(), minlength=n)
        for s in range(n):
            if counts[s] < 16:
                x, y = P[s]
                if window[0] <= x <= window[2] and window[1] <= y <= window[3]:
                    pts.append((x, y))
        return pts

    pts = seeds_for(lab, gx0, gy0, hx, hy, conf, raw, threshold)
    todo = [(p, 0, hx) for p in pts]
    # each far window seeds only from its annulus outside the previous, finer window
    prev = window
    for l2, a, b, c, d, cf, rw in far_seeds if far_zoom else ():
        groups = {}
        for (j, i, *labs) in _junctions(l2):
            x, y = a + (i + 0.5) * c, b + (j + 0.5) * d
            inside = prev[0] <= x <= prev[2] and prev[1] <= y <= prev[3]
            if not inside and not explained(labs):
                groups.setdefault(frozenset(labs), []).append((x, y))
        # a thin cell yields a long run of junctions; its ends are what matter
        for key in sorted(groups, key=sorted):
            run = groups[key]
            ends = {min(run), max(run), min(run, key=lambda v: (v[1], v[0])), max(run, key=lambda v: (v[1], v[0]))}
            todo.extend((e, zoom_depth - 1, c) for e in sorted(ends))
        prev = (a - 0.5 * c, b - 0.5 * d, a + (l2.shape[1] - 0.5) * c, b + (l2.shape[0] - 0.5) * d)
    budget = 400 if zoom_depth > 0 else 0
    while todo and budget > 0:
        # cluster seeds sharing depth and pixel size into cells of a few pixels
        depth, hcur = todo[0][1], todo[0][2]
        cur = [t for t in todo if t[1] == depth and t[2] == hcur]
        todo = [t for t in todo if not (t[1] == depth and t[2] == hcur)]
        cell = 6 * cur[0][2]
        buckets = {}
        for (x, y), dd, h in cur:
            buckets.setdefault((math.floor(x / cell), math.floor(y / cell)), []).append((x, y))
        for key in sorted(buckets):
            if budget <= 0:
                break
            pts_b = np.array(buckets[key])
            lo, hi = pts_b.min(axis=0), pts_b.max(axis=0)
            h = cur[0][2]
            half = 0.5 * max(hi[0] - lo[0], hi[1] - lo[1]) + 3 * h
            c = 0.5 * (lo + hi)
            w = (c[0] - half, c[1] - half, c[0] + half, c[1] + half)
            l2, a, b, hx2, hy2 = smp.grid(w, zoom_res)
            cf, rw = smp.count(l2, a, b, hx2, hy2, zoom_thr)
            res.zooms += 1
            budget -= 1
            for i in range(n):
                for j in range(i + 1, n):
                    if cf[i, j] >= zoom_thr:
                        edges.add((i, j))
            if depth + 1 < zoom_depth:
                for p in seeds_for(l2, a, b, hx2, hy2, cf, rw, zoom_thr):
                    todo.append((p, depth + 1, hx2))
    if zoom_depth > 0 and budget <= 0:
        res.notes.append("zoom budget exhausted")
    res.edges = edges
    return res


def oracle_edges(body: ConvexBody, sites: SiteSet, resolution: int = 1024, **kw) -> set:
    return sampled_voronoi_oracle(body, sites, resolution, **kw).edges


def star_shaped_violations(body: ConvexBody, sites: SiteSet, resolution: int = 128, window=None, stride: int = 3) -> int:
    """Discrete star-shapedness: samples on the segment from a sample to its
    own site keep that label, up to one cell next to a label change."""
    if window is None:
        window = default_window(sites)
    smp = _Sampler(body, sites, 0)
    lab, gx0, gy0, hx, hy = smp.grid(window, resolution)
    return int(_star_check(lab, gx0, gy0, hx, hy, sites.points_f, stride))


@nb.njit(cache=True)
def _star_check(lab, gx0, gy0, hx, hy, P, stride):
    ny, nx = lab.shape
    bad = 0
    for j in range(0, ny, stride):
        for i in range(0, nx, stride):
            s = lab[j, i]
            x, y = gx0 + i * hx, gy0 + j * hy
            sx, sy = P[s, 0], P[s, 1]
            L = max(abs(sx - x) / hx, abs(sy - y) / hy)
            steps = int(L * 2) + 1
            for k in range(1, steps):
                t = k / steps
                px, py = x + t * (sx - x), y + t * (sy - y)
                ci = int(round((px - gx0) / hx))
                cj = int(round((py - gy0) / hy))
                if ci < 0 or cj < 0 or ci >= nx or cj >= ny:
                    continue
                if lab[cj, ci] == s:
                    continue
                near = False
                for dj in range(-1, 2):
                    for di in range(-1, 2):
                        a, b = cj + dj, ci + di
                        if 0 <= a < ny and 0 <= b < nx and lab[a, b] == s:
                            near = True
                if not near:
                    bad += 1
                    break
    return bad


__all__ = [
    "OracleResult",
    "ResolutionTooLow",
    "default_window",
    "oracle_edges",
    "sampled_voronoi_oracle",
    "star_shaped_violations",
]
