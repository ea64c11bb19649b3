"""JSON serialization of shapes, site sets, graphs, parameters and reports.

Coordinates are written as strings: an exact decimal when the denominator
is a product of 2s and 5s, otherwise ``"p/q"``. Report floats carry 17
significant digits and keys are sorted, so equal inputs give equal bytes.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .convex_shape import ConvexBody, Homothet, preset, validate_body
from .delaunay import DelaunayGraph, SiteSet, make_sites
from .exact import rational_str, to_point
from .shape_params import ShapeParams


def _num(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = f"{x:.17g}"
    if "e" not in s and "." not in s and "inf" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int | None = 1) -> str:
    """Canonical JSON: sorted keys, 17-digit floats, exact rationals as strings."""

    def enc(o, level):
        pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
        end = "" if indent is None else "\n" + " " * (indent * level)
        sep = "," if indent is None else ","
        if o is None:
            return "null"
        if isinstance(o, (bool, np.bool_)):
            return "true" if o else "false"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _num(o)
        if isinstance(o, Fraction):
            return json.dumps(rational_str(o))
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, np.ndarray):
            return enc(o.tolist(), level)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(o[k], level + 1)}" for k in sorted(o, key=str)]
            return "{" + sep.join(items) + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in o):
                return "[" + ", ".join(enc(v, level + 1) for v in o) + "]"
            return "[" + sep.join(f"{pad}{enc(v, level + 1)}" for v in o) + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def loads(text: str):
    # keep decimals exact: numbers come back as strings for coordinate parsing
    return json.loads(text, parse_float=str)


def write(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _pt(p) -> list[str]:
    return [rational_str(p[0]), rational_str(p[1])]


# ------------------------------------------------------------------ shapes


def body_to_json(body: ConvexBody) -> dict:
    return {"vertices": [_pt(v) for v in body.vertices], "origin": _pt(body.origin)}


def body_from_json(data: dict) -> ConvexBody:
    return validate_body([to_point(v) for v in data["vertices"]], to_point(data["origin"]))


def load_body(source: str, origin=None) -> ConvexBody:
    """A preset name or the path of a shape JSON file, optionally re-anchored."""
    p = Path(source)
    body = body_from_json(loads(p.read_text(encoding="utf-8"))) if p.suffix == ".json" or p.exists() else preset(source)
    return body if origin is None else body.with_origin(origin)


# ------------------------------------------------------------------ sites


def sites_to_json(sites: SiteSet) -> dict:
    return {"points": [_pt(p) for p in sites.points]}


def sites_from_json(data: dict) -> SiteSet:
    return make_sites([to_point(p) for p in data["points"]])


def load_points(path) -> SiteSet:
    return sites_from_json(loads(Path(path).read_text(encoding="utf-8")))


# ------------------------------------------------------------------ graphs


def graph_to_json(g: DelaunayGraph) -> dict:
    wit = {}
    for (a, b), w in sorted(g.witnesses.items()):
        wit[f"{a}-{b}"] = {"center": _pt(w.center), "scale": rational_str(w.scale)}
    return {"edges": [[a, b] for a, b in sorted(g.edges)], "witnesses": wit}


def graph_from_json(data: dict, body: ConvexBody, sites: SiteSet) -> DelaunayGraph:
    edges = tuple(sorted((int(a), int(b)) for a, b in data["edges"]))
    wit = {}
    for key, w in data.get("witnesses", {}).items():
        a, b = (int(t) for t in key.split("-"))
        wit[(a, b)] = Homothet(to_point(w["center"]), Fraction(w["scale"]))
    return DelaunayGraph(body, sites, edges, wit)


# ------------------------------------------------------------------ parameters


def params_to_json(p: ShapeParams) -> dict:
    return {
        "alpha": p.alpha,
        "kappa0": p.kappa0,
        "kappa": p.kappa,
        "origin_star": _pt(p.origin_star),
        "t_triangulation": p.t_triangulation,
        "t_general": p.t_general,
        "tolerance": p.tolerance,
    }


def params_from_json(data: dict) -> ShapeParams:
    return ShapeParams(
        float(data["alpha"]),
        float(data["kappa0"]),
        float(data["kappa"]),
        to_point(data["origin_star"]),
        float(data["t_triangulation"]),
        float(data["t_general"]),
        float(data["tolerance"]),
    )


__all__ = [
    "body_from_json",
    "body_to_json",
    "dumps",
    "graph_from_json",
    "graph_to_json",
    "load_body",
    "load_points",
    "loads",
    "params_from_json",
    "params_to_json",
    "sites_from_json",
    "sites_to_json",
    "write",
]
