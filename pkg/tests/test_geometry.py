from hypothesis import given, settings, strategies as st

from brane_tiler.geometry import (
    convex_hull,
    cross,
    in_closed_polygon,
    lattice_points_on_boundary,
    polygon_double_area,
    segments_cross,
)

from oracles import hull_vertices_brute

pts = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@settings(max_examples=200, deadline=None)
@given(st.lists(pts, min_size=1, max_size=9))
def test_hull_matches_brute_force(points):
    hull = convex_hull(points)
    assert set(hull) == hull_vertices_brute(points)
    if len(hull) >= 3:
        assert polygon_double_area(hull) > 0
        n = len(hull)
        assert all(cross(hull[i], hull[(i + 1) % n], hull[(i + 2) % n]) > 0 for i in range(n))
        assert all(in_closed_polygon(p, hull) for p in points)


@settings(max_examples=300, deadline=None)
@given(pts, pts, pts, pts)
def test_segments_cross_is_symmetric(a, b, c, d):
    assert segments_cross(a, b, c, d) == segments_cross(c, d, a, b) == segments_cross(b, a, d, c)


def test_segment_cases():
    assert segments_cross((0, 0), (2, 2), (0, 2), (2, 0))
    assert not segments_cross((0, 0), (1, 0), (1, 0), (1, 1))
    assert segments_cross((0, 0), (2, 0), (1, 0), (3, 0))
    assert segments_cross((0, 0), (2, 0), (0, 0), (1, 0))
    assert segments_cross((0, 0), (2, 0), (1, 0), (1, 1))
    assert not segments_cross((0, 0), (1, 1), (2, 2), (3, 3))


def test_boundary_points_and_pick():
    tri = [(0, 0), (6, 0), (0, 3)]
    b = lattice_points_on_boundary(tri)
    assert b == 12
    area2 = polygon_double_area(tri)
    interior = sum(
        1 for x in range(7) for y in range(4)
        if in_closed_polygon((x, y), tri) and cross((0, 0), (6, 0), (x, y)) > 0
        and cross((6, 0), (0, 3), (x, y)) > 0 and cross((0, 3), (0, 0), (x, y)) > 0
    )
    assert area2 == 2 * interior + b - 2


def test_degenerate_polygons():
    assert in_closed_polygon((1, 1), [(1, 1)])
    assert in_closed_polygon((1, 0), [(0, 0), (2, 0)])
    assert not in_closed_polygon((1, 1), [(0, 0), (2, 0)])
