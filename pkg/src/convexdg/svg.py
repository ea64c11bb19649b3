"""Deterministic SVG rendering of a Delaunay graph with optional overlays."""
from __future__ import annotations

import colorsys
from pathlib import Path
from typing import Optional

import numpy as np

from .delaunay import DelaunayGraph
from .spanner import DirectPath, diamond_triangles

SIZE = 800.0


class IoError(OSError):
    pass


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _color(k: int) -> str:
    # golden-angle hues give distinct neighbouring labels
    h = (k * 0.6180339887498949) % 1.0
    r, g, b = colorsys.hls_to_rgb(h, 0.8, 0.55)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


class _Frame:
    def __init__(self, pts: np.ndarray):
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = np.maximum(hi - lo, 1e-9)
        side = float(span.max())
        pad = 0.1 * side
        c = 0.5 * (lo + hi)
        self.x0 = float(c[0]) - side / 2 - pad
        self.y1 = float(c[1]) + side / 2 + pad
        self.k = SIZE / (side + 2 * pad)

    def __call__(self, x, y) -> tuple[str, str]:
        return _fmt((x - self.x0) * self.k), _fmt((self.y1 - y) * self.k)

    def poly(self, pts) -> str:
        return " ".join(",".join(self(float(x), float(y))) for x, y in pts)


def render_svg(g: DelaunayGraph, *, witnesses: bool = False, diamonds: Optional[float] = None,
               path: Optional[DirectPath] = None, oracle=None, raster: int = 96) -> str:
    """SVG text: optional oracle underlay, witnesses, diamonds, direct path, edges, sites."""
    P = g.sites.points_f
    if len(P) == 0:
        raise ValueError("nothing to render")
    fr = _Frame(P)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(SIZE)} {_fmt(SIZE)}" '
           f'width="{_fmt(SIZE)}" height="{_fmt(SIZE)}">']
    out.append(f'<rect x="0" y="0" width="{_fmt(SIZE)}" height="{_fmt(SIZE)}" fill="white"/>')
    if oracle is not None:
        lab = oracle.labels
        x0, y0, x1, y1 = oracle.window
        ny, nx = lab.shape
        sy, sx = max(1, ny // raster), max(1, nx // raster)
        sub = lab[::sy, ::sx]
        hx, hy = (x1 - x0) * sx / nx, (y1 - y0) * sy / ny
        out.append('<g id="oracle" stroke="none">')
        for j in range(sub.shape[0]):
            row = sub[j]
            i = 0
            while i < len(row):
                k = i
                while k + 1 < len(row) and row[k + 1] == row[i]:
                    k += 1
                ax, ay = fr(x0 + i * hx, y0 + (j + 1) * hy)
                w = _fmt((k - i + 1) * hx * fr.k)
                h = _fmt(hy * fr.k)
                out.append(f'<rect x="{ax}" y="{ay}" width="{w}" height="{h}" fill="{_color(int(row[i]))}"/>')
                i = k + 1
        out.append("</g>")
    if witnesses:
        out.append('<g id="witnesses" fill="none" stroke="#8888cc" stroke-width="0.6">')
        for e in sorted(g.witnesses):
            w = g.witnesses[e]
            out.append(f'<polygon points="{fr.poly(w.vertices(g.body))}"/>')
        out.append("</g>")
    if diamonds is not None:
        out.append('<g id="diamonds" fill="#f4c430" fill-opacity="0.15" stroke="#c89b00" stroke-width="0.4">')
        for a, b in g.edges:
            for tri in diamond_triangles(P[a], P[b], diamonds):
                out.append(f'<polygon points="{fr.poly(tri)}"/>')
        out.append("</g>")
    out.append('<g id="edges" stroke="#222222" stroke-width="1.2">')
    for a, b in g.edges:
        (x1_, y1_), (x2_, y2_) = fr(*P[a]), fr(*P[b])
        out.append(f'<line x1="{x1_}" y1="{y1_}" x2="{x2_}" y2="{y2_}"/>')
    out.append("</g>")
    if path is not None:
        pts = [P[v] for v in path.vertices]
        out.append(f'<polyline id="direct-path" fill="none" stroke="#d62728" stroke-width="2.5" '
                   f'points="{fr.poly(pts)}"/>')
        out.append('<g id="crossings" fill="#d62728">')
        for x, y in path.crossing_points:
            cx, cy = fr(x, y)
            out.append(f'<circle cx="{cx}" cy="{cy}" r="2.5"/>')
        out.append("</g>")
    out.append('<g id="sites" fill="#1f4e99">')
    for k, (x, y) in enumerate(P):
        cx, cy = fr(x, y)
        out.append(f'<circle id="s{k}" cx="{cx}" cy="{cy}" r="3.5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_svg(g: DelaunayGraph, out_path, /, **overlays) -> str:
    text = render_svg(g, **overlays)
    try:
        Path(out_path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {out_path}: {exc}") from exc
    return text


__all__ = ["IoError", "export_svg", "render_svg"]
