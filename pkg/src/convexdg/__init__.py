"""Delaunay graphs of convex distance functions."""
from .convex_shape import ConvexBody, Homothet, distance, preset, validate_body
from .delaunay import DelaunayGraph, SiteSet, build_delaunay, make_sites
from .shape_params import ShapeParams, params_body, shape_params, stretch_bound

__version__ = "0.1.0"

__all__ = [
    "ConvexBody",
    "DelaunayGraph",
    "Homothet",
    "ShapeParams",
    "SiteSet",
    "build_delaunay",
    "distance",
    "make_sites",
    "params_body",
    "preset",
    "shape_params",
    "stretch_bound",
    "validate_body",
]
