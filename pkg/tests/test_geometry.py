import math

import numpy as np
import pytest
import shapely
from hypothesis import given
from hypothesis import strategies as st
from shapely.geometry import LineString
from shapely.geometry import Polygon as ShapelyPolygon

from steinsym import geometry as geo
from steinsym.errors import (
    DegeneratePrimitive,
    DisconnectedUnion,
    InputError,
    OriginInSet,
    SelfIntersectingPolygon,
)


def star_polygon(angles, radii, center=0j):
    order = np.argsort(angles)
    a = np.asarray(angles)[order]
    r = np.asarray(radii)[order]
    return geo.Polygon(tuple(complex(z) for z in center + r * np.exp(1j * a)))


@st.composite
def star_polygons(draw, min_size=3, max_size=9):
    n = draw(st.integers(min_size, max_size))
    # spread angles so consecutive vertices never coincide
    base = np.linspace(0, 2 * np.pi, n, endpoint=False)
    jitter = draw(st.lists(st.floats(-0.3, 0.3), min_size=n, max_size=n))
    radii = draw(st.lists(st.floats(0.3, 3.0), min_size=n, max_size=n))
    cx = draw(st.floats(-3, 3))
    cy = draw(st.floats(-3, 3))
    angles = base + np.array(jitter) * (2 * np.pi / n)
    return geo.validate(star_polygon(angles, radii, complex(cx, cy)))


def to_shapely(poly):
    return ShapelyPolygon([(v.real, v.imag) for v in poly.vertices])


def shapely_slice_measure(poly, u):
    _, y_lo, _, y_hi = to_shapely(poly).bounds
    line = LineString([(u, y_lo - 1), (u, y_hi + 1)])
    return to_shapely(poly).intersection(line).length


U_SHAPE = geo.Polygon((0, 3, 3 + 3j, 2 + 3j, 2 + 1j, 1 + 1j, 1 + 3j, 3j))


# --- validation ---------------------------------------------------------------


def test_validate_reorients_clockwise_polygon():
    p = geo.validate(geo.Polygon((0, 1j, 1 + 1j, 1)))
    assert geo.signed_area(p.vertices) > 0


def test_validate_drops_repeated_vertices():
    p = geo.validate(geo.Polygon((0, 1, 1, 1 + 1j, 1j)))
    assert len(p.vertices) == 4


@pytest.mark.parametrize(
    "s, error",
    [
        (geo.Polygon((0, 2 + 2j, 2, 2j)), SelfIntersectingPolygon),
        (geo.Polygon((0, 2 + 1j, 2, 1j)), SelfIntersectingPolygon),
        (geo.Polygon((0, 1, 2)), InputError),
        (geo.Disk(0, 0.0), DegeneratePrimitive),
        (geo.Circle(0, -1.0), DegeneratePrimitive),
        (geo.Segment(1j, 1j), DegeneratePrimitive),
        (geo.ConnectedUnion((geo.Disk(0, 1), geo.Disk(5, 1))), DisconnectedUnion),
    ],
)
def test_validate_rejects(s, error):
    with pytest.raises(error):
        geo.validate(s)


def test_errors_are_input_errors():
    assert issubclass(SelfIntersectingPolygon, InputError)
    assert issubclass(InputError, ValueError)


def test_touching_union_is_connected():
    u = geo.validate(geo.ConnectedUnion((geo.Disk(0, 1), geo.Segment(1, 4), geo.Disk(4, 0.5))))
    assert len(u.parts) == 3


# --- slices ------------------------------------------------------------------


def test_vertical_slice_of_u_shape():
    sl = geo.vertical_slice(U_SHAPE, 1.5)
    assert sl.intervals == ((0.0, 1.0),)
    assert geo.vertical_slice(U_SHAPE, 0.5).intervals == ((0.0, 3.0),)
    assert geo.vertical_slice(U_SHAPE, 7.0).empty


def test_u_shape_slices_against_rasterization():
    poly = geo.validate(U_SHAPE)
    for u in np.linspace(0.01, 2.99, 37):
        assert geo.vertical_slice(poly, u).measure == pytest.approx(shapely_slice_measure(poly, u), abs=1e-12)


def test_disk_and_segment_slices():
    assert geo.vertical_slice(geo.Disk(0, 2), 0.0).intervals == ((-2.0, 2.0),)
    assert geo.vertical_slice(geo.Disk(0, 2), 1.0).measure == pytest.approx(2 * math.sqrt(3))
    assert geo.vertical_slice(geo.Segment(-1j, 2j), 0.0).intervals == ((-1.0, 2.0),)
    assert geo.vertical_slice(geo.Circle(0, 1), 0.0).intervals == ((-1.0, -1.0), (1.0, 1.0))


@pytest.mark.parametrize("phi, expected", [(0.0, 2.0), (math.pi / 2, 2.0), (math.pi / 4, 2 * math.sqrt(2))])
def test_line_slice_of_square(phi, expected):
    square = geo.Polygon((-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j))
    assert geo.line_slice_measure(square, 0.0, phi) == pytest.approx(expected, abs=1e-12)


def test_line_slice_of_segment_along_itself():
    seg = geo.Segment(-2, 2)
    assert geo.line_slice_measure(seg, 0.0, 0.0) == pytest.approx(4.0)
    assert geo.line_slice_measure(seg, 0.0, 1.0) == 0.0


@given(star_polygons(), st.floats(0, 1))
def test_vertical_slices_match_shapely(poly, t):
    x_lo, x_hi, _, _ = geo.bounding_box(poly)
    u = x_lo + t * (x_hi - x_lo)
    assert geo.vertical_slice(poly, u).measure == pytest.approx(shapely_slice_measure(poly, u), abs=1e-9)


@given(star_polygons())
def test_area_matches_shapely(poly):
    assert geo.area(poly) == pytest.approx(to_shapely(poly).area, rel=1e-12)


# --- Steiner symmetrization ----------------------------------------------------


def test_steiner_of_shifted_disk():
    assert geo.steiner_symmetrize(geo.Disk(1 + 2j, 0.5)) == geo.Disk(1.0, 0.5)


def test_steiner_of_circle_is_diameter():
    assert geo.steiner_symmetrize(geo.Circle(0, 1)) == geo.Segment(-1, 1)


def test_steiner_of_vertical_segment_recentres():
    out = geo.steiner_symmetrize(geo.Segment(3 + 1j, 3 + 5j))
    assert out == geo.Segment(3 - 2j, 3 + 2j)


def test_steiner_of_slanted_segment_projects():
    out = geo.steiner_symmetrize(geo.Segment(-1 - 1j, 1 + 1j))
    assert out == geo.Segment(-1, 1)


def test_steiner_of_u_shape():
    poly = geo.validate(U_SHAPE)
    star = geo.steiner_symmetrize(poly)
    assert geo.area(star) == pytest.approx(geo.area(poly), rel=1e-12)
    assert geo.vertical_slice(star, 1.5).intervals[0] == pytest.approx((-0.5, 0.5))
    assert geo.vertical_slice(star, 0.5).intervals[0] == pytest.approx((-1.5, 1.5))


def test_steiner_keeps_spike_of_vertical_edge():
    l_shape = geo.validate(geo.ConnectedUnion((geo.Polygon((0, 2, 2 + 1j, 1j)), geo.Segment(2, 2 + 3j))))
    star = geo.steiner_symmetrize(l_shape)
    assert geo.vertical_slice(star, 2.0).measure == pytest.approx(3.0)
    assert geo.area(star) == pytest.approx(2.0)


@given(star_polygons())
def test_steiner_preserves_area(poly):
    star = geo.steiner_symmetrize(poly)
    assert geo.area(star) == pytest.approx(geo.area(poly), rel=1e-10)


@given(star_polygons())
def test_steiner_output_is_symmetric(poly):
    assert geo.is_symmetric_real(geo.steiner_symmetrize(poly))


@given(star_polygons(), st.floats(0.05, 0.95))
def test_steiner_preserves_slice_measure(poly, t):
    star = geo.steiner_symmetrize(poly)
    x_lo, x_hi, _, _ = geo.bounding_box(poly)
    u = x_lo + t * (x_hi - x_lo)
    sl = geo.vertical_slice(star, u)
    assert len(sl.intervals) <= 1
    assert sl.measure == pytest.approx(geo.vertical_slice(poly, u).measure, abs=1e-9)


@given(star_polygons())
def test_steiner_is_idempotent(poly):
    once = geo.steiner_symmetrize(poly)
    twice = geo.steiner_symmetrize(once)
    x_lo, x_hi, _, _ = geo.bounding_box(once)
    for u in np.linspace(x_lo, x_hi, 11)[1:-1]:
        assert geo.vertical_slice(twice, u).measure == pytest.approx(geo.vertical_slice(once, u).measure, abs=1e-9)


@given(star_polygons(), st.floats(-5, 5), st.floats(-5, 5))
def test_steiner_commutes_with_translation_up_to_real_shift(poly, dx, dy):
    moved = geo.affine(poly, 1.0, complex(dx, dy))
    a = geo.steiner_symmetrize(poly)
    b = geo.steiner_symmetrize(moved)
    assert geo.area(a) == pytest.approx(geo.area(b), rel=1e-9)
    xa = geo.bounding_box(a)
    xb = geo.bounding_box(b)
    assert xb[0] == pytest.approx(xa[0] + dx, abs=1e-9)
    assert xb[2] == pytest.approx(xa[2], abs=1e-9)


def test_steiner_monotone_under_inclusion():
    outer = geo.validate(geo.Polygon((-2 - 2j, 2 - 2j, 2 + 2j, -2 + 2j)))
    inner = geo.validate(geo.Polygon((-1 + 0.5j, 1 + 1j, 0 + 1.8j)))
    so, si = geo.steiner_symmetrize(outer), geo.steiner_symmetrize(inner)
    for w in geo.boundary_points(si, 64):
        assert geo.contains(so, w, 1e-9)


# --- circle symmetrization --------------------------------------------------------


def ray_log_measure_oracle(s, v, theta):
    """Sum of log(hi/lo) along a ray, from a shapely intersection in the normalized frame."""
    frame = geo.normalize_circle_frame(s, v)
    far = 1e3
    ray = LineString([(0, 0), (far * math.cos(theta), far * math.sin(theta))])
    if isinstance(frame, geo.Disk):
        shape = shapely.Point(frame.center.real, frame.center.imag).buffer(frame.radius, quad_segs=2048)
    else:
        shape = to_shapely(frame)
    hit = shape.intersection(ray)
    pieces = getattr(hit, "geoms", [hit])
    total = 0.0
    for g in pieces:
        if g.is_empty or g.length == 0:
            continue
        (x0, y0), (x1, y1) = g.coords[0], g.coords[-1]
        total += abs(math.log(math.hypot(x1, y1) / math.hypot(x0, y0)))
    return total


def test_circle_symmetrization_of_polygon_matches_ray_oracle():
    poly = geo.validate(geo.Polygon((2 + 0j, 4 + 0j, 4 + 3j, 3 + 1j, 2 + 2j)))
    v = 0.7
    sym = geo.circle_symmetrize(poly, v, n_rays=64)
    assert sym.samples
    for (theta, radius), log_measure in zip(sym.samples, sym.log_measures):
        assert 2 * math.log(radius) == pytest.approx(log_measure, abs=1e-12)
        assert log_measure == pytest.approx(ray_log_measure_oracle(poly, v, theta), abs=1e-8)


def test_circle_symmetrization_of_disk_matches_ray_oracle():
    disk = geo.Disk(3 + 1j, 1.0)
    sym = geo.circle_symmetrize(disk, 1.0, n_rays=64)
    for (theta, _), log_measure in zip(sym.samples, sym.log_measures):
        assert log_measure == pytest.approx(ray_log_measure_oracle(disk, 1.0, theta), abs=1e-5)


def test_circle_symmetrization_output_slice_is_inverse_symmetric():
    sym = geo.circle_symmetrize(geo.Disk(3, 1.0), 1.0, n_rays=32)
    lo, hi = sym.output_slice(0)
    assert lo * hi == pytest.approx(1.0)


def test_circle_symmetrization_rejects_set_containing_centre():
    with pytest.raises(OriginInSet):
        geo.circle_symmetrize(geo.Disk(1j, 0.5), 1.0)


def test_radial_symmetrize():
    lo, hi = geo.radial_symmetrize([(1.0, math.e**2)])
    assert (lo, hi) == pytest.approx((1 / math.e, math.e))


# --- inscribed radius and containment ---------------------------------------------


def test_largest_inscribed_radius():
    square = geo.Polygon((-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j))
    assert geo.largest_inscribed_radius(square, 0) == pytest.approx(1.0)
    assert geo.largest_inscribed_radius(square, 0.5) == pytest.approx(0.5)
    assert geo.largest_inscribed_radius(geo.Disk(0, 2), 0.5) == pytest.approx(1.5)
    assert geo.largest_inscribed_radius(geo.Segment(-1, 1), 0) == 0.0
    assert geo.largest_inscribed_radius(square, 5) == 0.0


def test_inscribed_radius_ignores_shared_boundary():
    union = geo.ConnectedUnion((geo.Polygon((0, 1, 1 + 1j, 1j)), geo.Polygon((1, 2, 2 + 1j, 1 + 1j))))
    assert geo.largest_inscribed_radius(union, 1 + 0.5j) == pytest.approx(0.5)


def test_contains_and_distance():
    square = geo.Polygon((0, 2, 2 + 2j, 2j))
    assert geo.contains(square, 1 + 1j)
    assert geo.contains(square, 2 + 1j)
    assert not geo.contains(square, 3 + 1j)
    assert geo.distance_to_boundary(square, 1 + 1j) == pytest.approx(1.0)


def test_symmetry_detection():
    assert geo.is_symmetric_real(geo.Polygon((-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j)))
    assert not geo.is_symmetric_real(geo.Polygon((0, 1, 1 + 1j, 1j)))
    assert geo.is_symmetric_real(geo.Segment(-2j, 2j))


@given(star_polygons(), st.floats(0, 2 * math.pi))
def test_rotation_preserves_area_and_diameter(poly, angle):
    rotated = geo.rotate(poly, angle)
    assert geo.area(rotated) == pytest.approx(geo.area(poly), rel=1e-12)
    assert geo.diameter(rotated) == pytest.approx(geo.diameter(poly), rel=1e-12)


def test_interval_set_merges_and_clips():
    s = geo.IntervalSet.from_pairs([(3, 4), (0, 1), (0.5, 2)])
    assert s.intervals == ((0.0, 2.0), (3.0, 4.0))
    assert s.clip(1.5, 3.5).measure == pytest.approx(1.0)
