"""Exterior conformal maps ``f: {|z| > 1} -> complement of a continuum``.

:func:`exterior_map` picks a closed-form family when the set matches one
(disk, circle, segment, axis-parallel rectangle, slit disk) and falls back to
the numerical Schwarz-Christoffel map for other polygons.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .. import geometry as geo
from ..errors import NotMappable
from .base import (
    DiskMap,
    ExteriorMap,
    Reparametrized,
    SegmentMap,
    SlitDiskMap,
    joukowski,
    joukowski_inverse,
    map_disk,
    map_segment,
    map_slit_disk,
    normalize_to_sigma,
    rotate_argument,
    slit_lambda,
)
from .laurent import boundary_image, is_univalent_on_circle, laurent_coefficients, map_to_dict
from .rectangle import (
    RectangleMap,
    RectangleMapParams,
    elliptic_side_integrals,
    map_rectangle,
    solve_rectangle_params,
)
from .sc import MAX_VERTICES, SCExteriorData, SCMap, map_polygon_exterior

__all__ = [
    "DiskMap",
    "ExteriorMap",
    "MAX_VERTICES",
    "RectangleMap",
    "RectangleMapParams",
    "Reparametrized",
    "SCExteriorData",
    "SCMap",
    "SegmentMap",
    "SlitDiskMap",
    "as_axis_rectangle",
    "as_slit_disk",
    "boundary_image",
    "elliptic_side_integrals",
    "exterior_map",
    "is_univalent_on_circle",
    "joukowski",
    "joukowski_inverse",
    "laurent_coefficients",
    "map_disk",
    "map_polygon_exterior",
    "map_rectangle",
    "map_segment",
    "map_slit_disk",
    "map_to_dict",
    "normalize_to_sigma",
    "rotate_argument",
    "sigma_coefficient",
    "slit_lambda",
    "solve_rectangle_params",
]

_TOL = 1e-12


def as_axis_rectangle(poly):
    """``(alpha, beta, gamma, y0)`` if the polygon is an axis-parallel rectangle, else None."""
    verts = [complex(v) for v in poly.vertices]
    if len(verts) != 4:
        return None
    xs = sorted({round(v.real, 12) for v in verts})
    ys = sorted({round(v.imag, 12) for v in verts})
    x_lo, x_hi = min(v.real for v in verts), max(v.real for v in verts)
    y_lo, y_hi = min(v.imag for v in verts), max(v.imag for v in verts)
    scale = max(x_hi - x_lo, y_hi - y_lo)
    for v in verts:
        on_x = min(abs(v.real - x_lo), abs(v.real - x_hi)) <= _TOL * scale
        on_y = min(abs(v.imag - y_lo), abs(v.imag - y_hi)) <= _TOL * scale
        if not (on_x and on_y):
            return None
    if len(xs) != 2 or len(ys) != 2:
        return None
    return y_hi - y_lo, x_lo, x_hi, 0.5 * (y_lo + y_hi)


def as_slit_disk(s):
    """``(w0, phi, R, m)`` if the union is a disk plus collinear slits through its centre.

    The slits together with the diameter must cover one segment centred at the
    disk's centre.
    """
    parts = list(geo.iter_parts(s))
    disks = [p for p in parts if isinstance(p, geo.Disk)]
    segs = [p for p in parts if isinstance(p, geo.Segment)]
    if len(disks) != 1 or not segs or len(disks) + len(segs) != len(parts):
        return None
    disk = disks[0]
    w0, R = disk.center, disk.radius
    ref = max(segs, key=lambda g: g.length)
    direction = (ref.q - ref.p) / ref.length
    pieces = [(-R, R)]
    for g in segs:
        ts = []
        for end in (g.p, g.q):
            rel = (end - w0) / direction
            if abs(rel.imag) > 1e-9 * max(R, 1.0):
                return None
            ts.append(rel.real)
        pieces.append((min(ts), max(ts)))
    merged = geo.merge_intervals(pieces, 1e-9 * max(R, 1.0))
    if len(merged) != 1:
        return None
    lo, hi = merged[0]
    if abs(lo + hi) > 1e-9 * max(R, 1.0):
        return None
    m = hi - lo
    phi = math.atan2(direction.imag, direction.real) % math.pi
    return w0, phi, R, m


@lru_cache(maxsize=256)
def exterior_map(s):
    """Exterior map of a validated continuum, closed form whenever available."""
    s = geo.validate(s)
    if isinstance(s, (geo.Disk, geo.Circle)):
        return map_disk(s.center, s.radius)
    if isinstance(s, geo.Segment):
        return map_segment(s.p, s.q)
    if isinstance(s, geo.Polygon):
        rect = as_axis_rectangle(s)
        if rect is not None:
            alpha, beta, gamma, y0 = rect
            return map_rectangle(alpha, beta, gamma, y0)
        return map_polygon_exterior(s)
    slit = as_slit_disk(s)
    if slit is not None:
        w0, phi, R, m = slit
        if m <= 2 * R * (1 + 1e-12):
            return map_disk(w0, R)
        return map_slit_disk(w0, phi, R, m)
    parts = list(geo.iter_parts(s))
    thin = [p for p in parts if isinstance(p, geo.Segment)]
    if len(thin) == len(parts):
        merged = _collinear_segment_hull(thin)
        if merged is not None:
            return map_segment(*merged)
    raise NotMappable(f"no exterior map available for {type(s).__name__} with {len(parts)} parts")


def _collinear_segment_hull(segs):
    """Endpoints of the single segment covered by connected collinear segments, or None."""
    ref = max(segs, key=lambda g: g.length)
    direction = (ref.q - ref.p) / ref.length
    pieces = []
    for g in segs:
        rel = [(e - ref.p) / direction for e in (g.p, g.q)]
        if any(abs(r.imag) > 1e-9 * ref.length for r in rel):
            return None
        pieces.append((min(r.real for r in rel), max(r.real for r in rel)))
    merged = geo.merge_intervals(pieces, 1e-9 * ref.length)
    if len(merged) != 1:
        return None
    lo, hi = merged[0]
    return ref.p + lo * direction, ref.p + hi * direction


def sigma_coefficient(s):
    """``a_minus1`` of the class-Sigma (``a1 = 1``) map onto the complement of ``s``.

    Because ``a1 * a_minus1`` is invariant under rotation of the argument, the
    normalized value is ``a1 * a_minus1 / |a1|^2``.
    """
    f = exterior_map(s)
    return f.a1 * f.a_minus1 / abs(f.a1) ** 2

