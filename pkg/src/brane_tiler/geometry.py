"""Exact integer predicates in the plane."""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Point = tuple[int, int]


def cross(o: Point, a: Point, b: Point) -> int:
    """Twice the signed area of triangle ``o a b`` (positive when ccw)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Hull vertices in counterclockwise order, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq: Sequence[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return lower[:-1] + upper[:-1]


def polygon_double_area(poly: Sequence[Point]) -> int:
    n = len(poly)
    return sum(
        poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1]
        for i in range(n)
    )


def on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True when segments ``ab`` and ``cd`` meet anywhere other than at a
    shared endpoint."""
    shared = {a, b} & {c, d}
    if shared:
        if len(shared) == 2:
            return True
        # overlapping collinear segments with one common endpoint
        p = shared.pop()
        u = b if a == p else a
        v = d if c == p else c
        return cross(p, u, v) == 0 and (
            (u[0] - p[0]) * (v[0] - p[0]) + (u[1] - p[1]) * (v[1] - p[1]) > 0
        )
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True
    return (
        on_segment(a, c, d)
        or on_segment(b, c, d)
        or on_segment(c, a, b)
        or on_segment(d, a, b)
    )


def in_closed_polygon(p: Point, hull: Sequence[Point]) -> bool:
    """Membership in a convex polygon given ccw (boundary included)."""
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        return on_segment(p, hull[0], hull[1])
    n = len(hull)
    return all(cross(hull[i], hull[(i + 1) % n], p) >= 0 for i in range(n))


def lattice_points_on_boundary(hull: Sequence[Point]) -> int:
    n = len(hull)
    return sum(
        gcd(abs(hull[(i + 1) % n][0] - hull[i][0]), abs(hull[(i + 1) % n][1] - hull[i][1]))
        for i in range(n)
    )
