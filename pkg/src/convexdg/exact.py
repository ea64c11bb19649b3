"""Rational coordinates and filtered orientation predicates."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Number = Union[int, float, str, Fraction]
Point = Tuple[Fraction, Fraction]

_ORIENT_EPS = 8.0 * 2.0 ** -52


def to_fraction(v: Number) -> Fraction:
    """Convert to an exact rational.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``
    rather than the binary expansion.
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"non-finite coordinate {v!r}")
        return Fraction(repr(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    # numpy scalars and friends
    if hasattr(v, "item"):
        return to_fraction(v.item())
    raise TypeError(f"cannot convert {type(v).__name__} to a rational")


def to_point(p: Sequence[Number]) -> Point:
    if len(p) != 2:
        raise ValueError(f"expected a 2-D point, got {p!r}")
    return (to_fraction(p[0]), to_fraction(p[1]))


def to_points(pts: Iterable[Sequence[Number]]) -> tuple[Point, ...]:
    return tuple(to_point(p) for p in pts)


def fpoint(p: Point) -> tuple[float, float]:
    return (float(p[0]), float(p[1]))


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, s) -> Point:
    return (a[0] * s, a[1] * s)


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def perp(a):
    """Rotate by +90 degrees."""
    return (-a[1], a[0])


def sign(x) -> int:
    return (x > 0) - (x < 0)


def orient_exact(a: Point, b: Point, c: Point) -> int:
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c, with a float filter and exact fallback."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    l = (bx - ax) * (cy - ay)
    r = (by - ay) * (cx - ax)
    det = l - r
    bound = _ORIENT_EPS * (abs(l) + abs(r)) + 1e-300
    # conversion error of the inputs themselves
    mag = max(abs(ax), abs(ay), abs(bx), abs(by), abs(cx), abs(cy), 1.0)
    bound += 8.0 * 2.0 ** -53 * mag * (abs(bx - ax) + abs(by - ay) + abs(cx - ax) + abs(cy - ay))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    return orient_exact(a, b, c)


def on_segment(p: Point, a: Point, b: Point, *, open_: bool = False) -> bool:
    """Is p on segment ab (closed unless ``open_``)? Assumes exact inputs."""
    if orient(a, b, p) != 0:
        return False
    lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
    lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
    if not (lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y):
        return False
    if open_ and (p == a or p == b):
        return False
    return True


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and on_segment(c, a, b))
        or (o2 == 0 and on_segment(d, a, b))
        or (o3 == 0 and on_segment(a, c, d))
        or (o4 == 0 and on_segment(b, c, d))
    )


def rational_str(v: Fraction) -> str:
    """Exact decimal when the denominator allows it, otherwise ``p/q``."""
    v = Fraction(v)
    den = v.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{v.numerator}/{v.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(v.numerator)
    scaled = v * 10**digits
    assert scaled.denominator == 1
    n = scaled.numerator
    neg = n < 0
    s = str(abs(n)).rjust(digits + 1, "0")
    s = s[:-digits] + "." + s[-digits:]
    return ("-" if neg else "") + s
