#!/usr/bin/env python

# Polygon construction, containment and export

import math

import numpy as np
import pytest

from .export import RegionFormatError, format_corner_csv, read_corner_csv, render_svg, write_corner_csv
from .region import (
    contains,
    convex_hull,
    hausdorff,
    intersect_regions,
    region_from_halfplanes,
    region_from_support,
    support,
    supporting_angles,
)
from .types import HalfPlane, RatePoint, RegionPolygon, Weights

OUTER_CORNERS = [(0.0, 0.9748), (0.3326, 0.7585), (0.6739, 0.3326), (0.8522, 0.0)]


def _polygon_support(points):
    pts = np.asarray(points, dtype=float)
    return lambda w: float(np.max(pts @ np.asarray(w)))


def _simplex():
    return convex_hull([(1.0, 0.0), (0.0, 1.0)])


def test_weights_and_points():
    w = Weights.from_angle(math.pi / 2)
    assert w[0] == pytest.approx(0.0, abs=1e-15)
    assert w.angle == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        Weights((0.0, 0.0))
    with pytest.raises(ValueError):
        RatePoint((-0.1, 0.2))
    assert RatePoint((-1e-13, 0.5))[0] == 0.0
    assert RatePoint((0.5, 0.5)).dot(Weights((1.0, 2.0))) == pytest.approx(1.5)


def test_unit_simplex_from_max_support():
    region = region_from_support(lambda w: max(w.w))
    np.testing.assert_allclose(region.points, [(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)], atol=1e-9)


def test_constant_support_gives_quarter_disc():
    sweep = 2048
    region = region_from_support(lambda w: 1.0, sweep_count=sweep)
    half_step = (math.pi / 2) / (sweep - 1) / 2
    radii = [math.hypot(*c.r) for c in region.frontier]
    assert len(region.frontier) > sweep // 2
    assert min(radii) >= 1.0 - 1e-9
    assert max(radii) <= 1.0 / math.cos(half_step) + 1e-9
    assert region.max_rates == pytest.approx((1.0, 1.0), abs=1e-9)


def test_single_user_support_degenerates_to_segment():
    region = region_from_support(lambda w: w[0] * 0.8522)
    np.testing.assert_allclose(region.points, [(0.0, 0.0), (0.8522, 0.0)], atol=1e-9)


def test_single_point_closes_to_square():
    region = convex_hull([(0.5, 0.5)])
    np.testing.assert_allclose(region.points, [(0.0, 0.5), (0.0, 0.0), (0.5, 0.0), (0.5, 0.5)])


def test_hull_is_idempotent_and_drops_interior_points():
    region = convex_hull(OUTER_CORNERS + [(0.2, 0.2), (0.3, 0.5)])
    again = convex_hull(region.corners)
    assert again == region
    assert region.corners[0] == RatePoint((0.0, 0.9748))
    assert region.corners[1] == RatePoint((0.0, 0.0))


def test_collinear_point_is_not_a_corner():
    mid = (0.5 * (0.3326 + 0.6739), 0.5 * (0.7585 + 0.3326))
    region = convex_hull(OUTER_CORNERS + [mid])
    assert RatePoint(mid) not in region.corners
    assert len(region) == 5


def test_polygon_support_recovers_polygon_exactly():
    region = region_from_support(_polygon_support(OUTER_CORNERS))
    expected = convex_hull(OUTER_CORNERS)
    assert len(region) == len(expected)
    assert hausdorff(region, expected) <= 1e-9


def test_sweep_doubling_is_stable():
    f = _polygon_support(OUTER_CORNERS)
    assert hausdorff(region_from_support(f, 1024), region_from_support(f, 2048)) <= 1e-6


def test_scaling_support_scales_corners():
    f = _polygon_support(OUTER_CORNERS)
    base = region_from_support(f)
    scaled = region_from_support(lambda w: 2.0 * f(w))
    np.testing.assert_allclose(scaled.points, 2.0 * base.points, atol=1e-9)


def test_negative_support_is_rejected():
    with pytest.raises(ValueError):
        region_from_support(lambda w: -1.0)
    with pytest.raises(ValueError):
        region_from_support(lambda w: 1.0, sweep_count=4)


def test_halfplanes_and_intersection():
    square = convex_hull([(0.6, 0.6)])
    region = intersect_regions(_simplex(), square)
    np.testing.assert_allclose(
        region.points, [(0.0, 0.6), (0.0, 0.0), (0.6, 0.0), (0.6, 0.4), (0.4, 0.6)], atol=1e-9
    )

    planes = [HalfPlane(Weights((1.0, 1.0)), 1.0), HalfPlane(Weights((1.0, 0.0)), 0.6)]
    np.testing.assert_allclose(
        region_from_halfplanes(planes).points, [(0.0, 1.0), (0.0, 0.0), (0.6, 0.0), (0.6, 0.4)], atol=1e-9
    )
    assert hausdorff(intersect_regions(region), region) <= 1e-12


def test_containment():
    simplex = _simplex()
    assert contains(simplex, (0.5, 0.5))
    assert contains(simplex, (0.5 + 1e-7, 0.5), tol=1e-6)
    assert not contains(simplex, (0.6, 0.5), tol=1e-6)
    assert not contains(simplex, (-0.01, 0.2))

    segment = RegionPolygon(((0.0, 0.0), (0.8522, 0.0)))
    assert contains(segment, (0.4, 0.0))
    assert not contains(segment, (0.4, 0.01), tol=1e-6)


def test_boundary_points_of_degenerate_regions_are_inside():
    segment = region_from_support(lambda w: 0.8522 * w[0])
    for x in (0.0, 0.1, 0.3, 0.4, 0.7, 0.8522):
        assert contains(segment, (x, 0.0)), x
    assert not contains(segment, (0.86, 0.0))
    assert not contains(segment, (0.4, 1e-3))

    hull = convex_hull([(0.3, 0.7), (0.7, 0.3)])
    assert contains(hull, (0.5, 0.5))
    assert contains(hull, (0.3, 0.0))
    assert not contains(hull, (0.6, 0.6), tol=1e-6)


def test_collinear_cloud_hull_is_a_segment():
    region = convex_hull([(0.0, 0.0), (0.25, 0.0), (0.5, 0.0), (1.0, 0.0)])
    assert region.max_rates == pytest.approx((1.0, 0.0))
    assert contains(region, (0.75, 0.0))
    assert not contains(region, (0.5, 0.01), tol=1e-6)


def test_support_and_supporting_angles():
    region = convex_hull(OUTER_CORNERS)
    assert support(region, Weights((1.0, 1.0))) == pytest.approx(1.0911)
    angles = supporting_angles(region)
    assert [c for c, _ in angles] == list(region.frontier)
    degrees = [a for _, a in angles]
    assert degrees == sorted(degrees, reverse=True)
    assert all(0.0 <= a <= 90.0 for a in degrees)


def test_frontier_order():
    region = convex_hull(OUTER_CORNERS)
    frontier = region.frontier
    assert frontier[0] == RatePoint((0.0, 0.9748))
    assert frontier[-1] == RatePoint((0.8522, 0.0))
    assert [c[0] for c in frontier] == sorted(c[0] for c in frontier)


def test_corner_csv(tmp_path):
    region = convex_hull(OUTER_CORNERS)
    text = format_corner_csv(region)
    assert text.splitlines()[0] == "r1,r2"
    assert text.splitlines()[1] == "0.0000000000,0.9748000000"

    path = write_corner_csv(region, tmp_path / "out" / "outer.csv")
    assert hausdorff(read_corner_csv(path), region) <= 1e-10


@pytest.mark.parametrize(
    "content, match",
    [
        ("x,y\n0,1\n", "header"),
        ("r1,r2\n", "no corners"),
        ("r1,r2\n0.1,abc\n", "could not convert"),
        ("r1,r2\n0.1,0.2,0.3\n", "columns"),
        ("r1,r2\n-0.5,0.2\n", "nonnegative"),
    ],
)
def test_malformed_corner_csv(tmp_path, content, match):
    path = tmp_path / "bad.csv"
    path.write_text(content)
    with pytest.raises(RegionFormatError, match=match):
        read_corner_csv(path)


def test_svg_is_deterministic(tmp_path):
    regions = [("outer", convex_hull(OUTER_CORNERS)), ("simplex", _simplex())]
    first = render_svg(regions, tmp_path / "a.svg", ticks=(0.8522, 0.9748))
    second = render_svg(regions, tmp_path / "b.svg", ticks=(0.8522, 0.9748))
    data = first.read_bytes()
    assert b"<svg" in data
    assert data == second.read_bytes()
    print("✓ SVG determinism test passed")
