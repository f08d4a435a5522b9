"""Triangulated toric diagram of the moduli space for a generic stability.

Rays are the theta-stable perfect matchings, edges the pairs whose union is
stable, and triangles the bounded faces of the resulting plane graph.  Every
invariant is checked; failures raise :class:`TriangulationError`.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence, TypeVar

from .errors import StabilityError, TriangulationError
from .geometry import (
    Point,
    convex_hull,
    cross,
    on_segment,
    polygon_double_area,
    segments_cross,
)
from .lattice import WeightLattice
from .matchings import PerfectMatching, is_extremal, with_characters
from .stability import (
    OrbitType,
    classify_cosupport,
    decompose_dim0,
    decompose_dim1,
    is_generic,
    is_theta_stable,
    stability_vector,
)
from .tiling import BraneTiling

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("BRANE_TILER_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class ToricTriangulation:
    rays: tuple[PerfectMatching, ...]
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]
    hull: tuple[Point, ...]
    extremal: tuple[bool, ...] = ()

    @property
    def points(self) -> list[Point]:
        return [r.point for r in self.rays]

    def ray_index(self, matching_id: Sequence[str]) -> int:
        key = tuple(sorted(matching_id))
        for k, r in enumerate(self.rays):
            if r.id == key:
                return k
        raise KeyError(matching_id)

    def to_document(self) -> dict[str, Any]:
        return {
            "rays": [
                {
                    "index": k,
                    "matching": list(r.id),
                    "point": list(r.point),
                    "extremal": bool(self.extremal[k]) if self.extremal else None,
                }
                for k, r in enumerate(self.rays)
            ],
            "edges": [list(e) for e in self.edges],
            "triangles": [list(t) for t in self.triangles],
            "hull": [list(p) for p in self.hull],
        }

    @classmethod
    def from_document(cls, doc: dict[str, Any]) -> ToricTriangulation:
        rays = []
        extremal = []
        for k, r in enumerate(doc["rays"]):
            if r["index"] != k:
                raise ValueError("rays must be listed in index order")
            edges = frozenset(r["matching"])
            rays.append(PerfectMatching(tuple(sorted(edges)), edges, (1, *r["point"])))
            extremal.append(r.get("extremal"))
        return cls(
            rays=tuple(rays),
            edges=tuple((e[0], e[1]) for e in doc["edges"]),
            triangles=tuple((t[0], t[1], t[2]) for t in doc["triangles"]),
            hull=tuple((p[0], p[1]) for p in doc["hull"]),
            extremal=tuple(bool(x) for x in extremal) if None not in extremal else (),
        )


def _half(d: tuple[int, int]) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _by_angle(d: tuple[int, int], e: tuple[int, int]) -> int:
    """Exact comparison of direction vectors by angle in [0, 2pi)."""
    if _half(d) != _half(e):
        return _half(d) - _half(e)
    return -cross((0, 0), d, e)


def _plane_faces(points: Sequence[Point], edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    """Faces of an embedded straight-line graph, each traced with the face on
    its left (bounded faces come out counterclockwise)."""
    nbrs: dict[int, list[int]] = {i: [] for i in range(len(points))}
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    order = {}
    for v, ns in nbrs.items():
        direction = {w: (points[w][0] - points[v][0], points[w][1] - points[v][1]) for w in ns}
        order[v] = sorted(ns, key=cmp_to_key(lambda a, b: _by_angle(direction[a], direction[b])))
    seen: set[tuple[int, int]] = set()
    faces = []
    for u in sorted(nbrs):
        for v in order[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                around = order[b]
                k = around.index(a)
                a, b = b, around[k - 1]
            faces.append(face)
    return faces


def build_triangulation(
    t: BraneTiling,
    L: WeightLattice,
    matchings: Sequence[PerfectMatching],
    theta: Sequence[int],
    cross_check: bool = True,
) -> ToricTriangulation:
    q = L.quiver
    theta = stability_vector(q, theta)
    if not is_generic(theta):
        raise StabilityError(f"theta {list(theta)} is not generic")
    matchings = [m if m.character is not None else with_characters(L, [m])[0] for m in matchings]

    stable_flags = _map(lambda m: is_theta_stable(q, m.edges, theta), matchings)
    rays = tuple(sorted(m for m, ok in zip(matchings, stable_flags) if ok))
    points = [r.point for r in rays]
    if len(set(points)) != len(points):
        dup = sorted({p for p in points if points.count(p) > 1})
        raise TriangulationError(f"several stable matchings share diagram points {dup}")

    pairs = list(combinations(range(len(rays)), 2))
    pair_ok = _map(
        lambda ij: is_theta_stable(q, rays[ij[0]].edges | rays[ij[1]].edges, theta), pairs
    )
    edges = tuple(ij for ij, ok in zip(pairs, pair_ok) if ok)

    for (i, j), (k, l) in combinations(edges, 2):
        if segments_cross(points[i], points[j], points[k], points[l]):
            raise TriangulationError(f"edges {(i, j)} and {(k, l)} cross")
    for i, j in edges:
        for k, p in enumerate(points):
            if k not in (i, j) and on_segment(p, points[i], points[j]):
                raise TriangulationError(f"edge {(i, j)} passes through ray {k}")

    hull = tuple(convex_hull(points))
    triangles = []
    outer = []
    for face in _plane_faces(points, edges):
        area = polygon_double_area([points[v] for v in face])
        if area > 0:
            if len(face) != 3:
                raise TriangulationError(
                    f"bounded face {face} has {len(face)} sides; triangulation incomplete"
                )
            triangles.append(tuple(sorted(face)))
        else:
            outer.append(face)
    triangles.sort()

    extremal = tuple(is_extremal(q, r.edges) for r in rays)
    tri = ToricTriangulation(rays, edges, tuple(triangles), hull, extremal)
    if len(outer) != 1 and len(rays) > 2:
        raise TriangulationError(f"expected one unbounded face, found {len(outer)}")
    check_triangulation(tri)
    if cross_check:
        cross_check_unions(t, q, tri, theta)
    return tri


def check_triangulation(tri: ToricTriangulation) -> None:
    """Geometric invariants: unimodular triangles tiling the hull and the
    Euler relation of a disc."""
    points = tri.points
    for face in tri.triangles:
        a, b, c = (points[v] for v in face)
        det = cross(a, b, c)
        if abs(det) != 1:
            raise TriangulationError(f"triangle {face} has determinant {det}, not +-1")
    hull_area = polygon_double_area(list(tri.hull)) if len(tri.hull) > 2 else 0
    covered = sum(abs(cross(*(points[v] for v in face))) for face in tri.triangles)
    if covered != hull_area:
        raise TriangulationError(
            f"triangles cover doubled area {covered}, hull has {hull_area}"
        )
    euler = len(tri.rays) - len(tri.edges) + len(tri.triangles)
    if euler != 1:
        raise TriangulationError(f"Euler relation gives {euler}, expected 1")


def cross_check_unions(t: BraneTiling, q, tri: ToricTriangulation, theta: Sequence[int]) -> None:
    """Edges must be one-dimensional cosupports splitting into their
    endpoints; triangles must be fixed points splitting into their corners."""
    rays = tri.rays
    for i, j in tri.edges:
        union = rays[i].edges | rays[j].edges
        if classify_cosupport(t, union) is not OrbitType.DIM1:
            raise TriangulationError(f"edge {(i, j)}: union is not a cycle cosupport")
        parts = set(decompose_dim1(t, union))
        if parts != {rays[i].edges, rays[j].edges}:
            raise TriangulationError(f"edge {(i, j)}: union decomposes differently")
    for face in tri.triangles:
        union = frozenset().union(*(rays[v].edges for v in face))
        if classify_cosupport(t, union) is not OrbitType.DIM0:
            raise TriangulationError(f"triangle {face}: union is not a fixed-point cosupport")
        if not is_theta_stable(q, union, theta):
            raise TriangulationError(f"triangle {face}: union is not stable")
        parts = set(decompose_dim0(t, union))
        if parts != {rays[v].edges for v in face}:
            raise TriangulationError(f"triangle {face}: union decomposes differently")
        for v, w in combinations(face, 2):
            if classify_cosupport(t, rays[v].edges | rays[w].edges) is not OrbitType.DIM1:
                raise TriangulationError(f"triangle {face}: side {(v, w)} is not a cycle")


# -- output ---------------------------------------------------------------------


def emit_diagram(tri: ToricTriangulation, fmt: str = "svg", labels: Sequence[str] | None = None) -> str:
    if fmt == "json":
        return json.dumps(tri.to_document(), indent=2, sort_keys=True) + "\n"
    if fmt == "svg":
        return _svg(tri, labels)
    raise ValueError(f"unknown diagram format {fmt!r}; use 'svg' or 'json'")


def _svg(tri: ToricTriangulation, labels: Sequence[str] | None) -> str:
    pts = tri.points
    xs = [p[0] for p in pts] or [0]
    ys = [p[1] for p in pts] or [0]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    unit = 60
    width, height = (x1 - x0) * unit, (y1 - y0) * unit

    def xy(p: Point) -> tuple[int, int]:
        return (p[0] - x0) * unit, (y1 - p[1]) * unit

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g stroke="#dddddd" stroke-width="1">',
    ]
    for x in range(x0, x1 + 1):
        out.append(f'<line x1="{(x - x0) * unit}" y1="0" x2="{(x - x0) * unit}" y2="{height}"/>')
    for y in range(y0, y1 + 1):
        out.append(f'<line x1="0" y1="{(y1 - y) * unit}" x2="{width}" y2="{(y1 - y) * unit}"/>')
    out.append("</g>")
    out.append('<g fill="#cfe3f5" stroke="none">')
    for face in tri.triangles:
        coords = " ".join("{},{}".format(*xy(pts[v])) for v in face)
        out.append(f'<polygon points="{coords}"/>')
    out.append("</g>")
    out.append('<g stroke="#1f3b57" stroke-width="2">')
    for i, j in tri.edges:
        (ax, ay), (bx, by) = xy(pts[i]), xy(pts[j])
        out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12">')
    for k, p in enumerate(pts):
        cx, cy = xy(p)
        fill = "#b22222" if tri.extremal and tri.extremal[k] else "#1f3b57"
        text = labels[k] if labels else str(k)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="{fill}"/>')
        out.append(f'<text x="{cx + 7}" y="{cy - 7}">{text}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
