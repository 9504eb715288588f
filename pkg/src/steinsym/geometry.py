"""Compact planar sets, line slices, and the two symmetrization transforms.

Points are Python complex numbers throughout. Sets are immutable (hashable)
dataclasses so downstream map construction can be cached per set.

Thin pieces (``Segment``, ``Circle``) carry no area. Their Steiner image is
their projection onto the real axis, except that a vertical segment keeps its
full length and is re-centred on the axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import (
    DegeneratePrimitive,
    DisconnectedUnion,
    InputError,
    OriginInSet,
    SelfIntersectingPolygon,
)

EPS = 1e-12


@dataclass(frozen=True)
class Polygon:
    """Simple polygon, vertices listed counterclockwise (after validation)."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(complex(v) for v in self.vertices))


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))


@dataclass(frozen=True)
class Circle:
    """The circle curve ``|w - center| = radius`` (a thin set)."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))


@dataclass(frozen=True)
class Segment:
    p: complex
    q: complex

    def __post_init__(self):
        object.__setattr__(self, "p", complex(self.p))
        object.__setattr__(self, "q", complex(self.q))

    @property
    def length(self):
        return abs(self.q - self.p)


@dataclass(frozen=True)
class ConnectedUnion:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


PlanarSet = Union[Polygon, Disk, Circle, Segment, ConnectedUnion]


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise disjoint closed intervals ``(lo, hi)`` on a line."""

    intervals: tuple = ()

    @property
    def measure(self):
        return float(sum(hi - lo for lo, hi in self.intervals))

    @property
    def empty(self):
        return not self.intervals

    @classmethod
    def from_pairs(cls, pairs, eps=EPS):
        return cls(tuple(merge_intervals(pairs, eps)))

    def clip(self, lo=-math.inf, hi=math.inf):
        out = []
        for a, b in self.intervals:
            a, b = max(a, lo), min(b, hi)
            if a <= b:
                out.append((a, b))
        return IntervalSet(tuple(out))


@dataclass(frozen=True)
class SampledRadialSet:
    """Circle symmetrization sampled on rays through ``i*v``.

    ``samples`` holds ``(theta, R)`` for each ray meeting the set; after the
    transform the ray carries the slice ``1/R <= rho <= R`` in the normalized
    plane ``zeta = w/v - i``. ``log_measures`` keeps the per-ray logarithmic
    measure of the input slice.
    """

    v: float
    samples: tuple
    log_measures: tuple = field(default=())

    def output_slice(self, index):
        _, radius = self.samples[index]
        return (1.0 / radius, radius)


def merge_intervals(pairs, eps=EPS):
    items = sorted((float(min(a, b)), float(max(a, b))) for a, b in pairs)
    out = []
    for lo, hi in items:
        if out and lo <= out[-1][1] + eps:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


# ---------------------------------------------------------------------------
# elementary helpers


def _cross(a, b):
    return a.real * b.imag - a.imag * b.real


def signed_area(vertices):
    z = np.asarray(vertices, dtype=complex)
    nxt = np.roll(z, -1)
    return 0.5 * float(np.sum(z.real * nxt.imag - nxt.real * z.imag))


def _orient(a, b, c):
    v = _cross(b - a, c - a)
    scale = max(abs(b - a), abs(c - a), 1.0)
    if abs(v) <= EPS * scale * scale:
        return 0
    return 1 if v > 0 else -1


def _on_segment(a, b, c):
    """c collinear with ab assumed; is c within the bounding box of ab."""
    return (
        min(a.real, b.real) - EPS <= c.real <= max(a.real, b.real) + EPS
        and min(a.imag, b.imag) - EPS <= c.imag <= max(a.imag, b.imag) + EPS
    )


def segments_intersect(a, b, c, d):
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4 and o1 * o2 <= 0 and o3 * o4 <= 0:
        if o1 != 0 or o2 != 0:
            return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def point_segment_distance(w, a, b):
    """Distance from point(s) ``w`` to the closed segment ``[a, b]``."""
    w = np.asarray(w, dtype=complex)
    d = b - a
    den = abs(d) ** 2
    if den == 0.0:
        return np.abs(w - a)
    t = ((w - a) * np.conj(d)).real / den
    t = np.clip(t, 0.0, 1.0)
    return np.abs(w - (a + t * d))


def edges(polygon):
    v = polygon.vertices
    return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


def is_thin(s):
    return isinstance(s, (Segment, Circle))


def iter_parts(s):
    if isinstance(s, ConnectedUnion):
        for p in s.parts:
            yield from iter_parts(p)
    else:
        yield s


def affine(s, a, b=0.0):
    """Image of the set under ``w -> a*w + b`` (``a != 0``)."""
    a = complex(a)
    b = complex(b)
    if isinstance(s, Polygon):
        verts = [a * v + b for v in s.vertices]
        if signed_area(verts) < 0:  # a reflection never occurs for complex a; kept for safety
            verts = verts[::-1]
        return Polygon(verts)
    if isinstance(s, Disk):
        return Disk(a * s.center + b, abs(a) * s.radius)
    if isinstance(s, Circle):
        return Circle(a * s.center + b, abs(a) * s.radius)
    if isinstance(s, Segment):
        return Segment(a * s.p + b, a * s.q + b)
    if isinstance(s, ConnectedUnion):
        return ConnectedUnion(tuple(affine(p, a, b) for p in s.parts))
    raise TypeError(f"not a planar set: {s!r}")


def rotate(s, angle, about=0.0):
    rot = cmath.exp(1j * angle)
    return affine(s, rot, about - rot * about)


def reflect_real(s):
    """Mirror image in the real axis."""
    if isinstance(s, Polygon):
        return Polygon([v.conjugate() for v in reversed(s.vertices)])
    if isinstance(s, Disk):
        return Disk(s.center.conjugate(), s.radius)
    if isinstance(s, Circle):
        return Circle(s.center.conjugate(), s.radius)
    if isinstance(s, Segment):
        return Segment(s.p.conjugate(), s.q.conjugate())
    return ConnectedUnion(tuple(reflect_real(p) for p in s.parts))


def bounding_box(s):
    xs, ys = [], []
    for p in iter_parts(s):
        if isinstance(p, Polygon):
            xs += [v.real for v in p.vertices]
            ys += [v.imag for v in p.vertices]
        elif isinstance(p, (Disk, Circle)):
            xs += [p.center.real - p.radius, p.center.real + p.radius]
            ys += [p.center.imag - p.radius, p.center.imag + p.radius]
        else:
            xs += [p.p.real, p.q.real]
            ys += [p.p.imag, p.q.imag]
    return min(xs), max(xs), min(ys), max(ys)


def diameter(s):
    pts = boundary_points(s, 64)
    if len(pts) > 2048:
        pts = pts[:: len(pts) // 2048 + 1]
    return float(np.max(np.abs(pts[:, None] - pts[None, :])))


def area(s):
    """Area of a polygon, disk or thin set. Unions go through slice integration."""
    if isinstance(s, Polygon):
        return signed_area(s.vertices)
    if isinstance(s, Disk):
        return math.pi * s.radius**2
    if is_thin(s):
        return 0.0
    xs = _breakpoints(list(iter_parts(s)))
    total = 0.0
    x, w = np.polynomial.legendre.leggauss(16)
    for lo, hi in zip(xs[:-1], xs[1:]):
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        total += half * sum(wi * vertical_slice(s, mid + half * xi).measure for xi, wi in zip(x, w))
    return total


# ---------------------------------------------------------------------------
# validation


def _normalize_polygon(poly):
    verts = []
    for v in poly.vertices:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DegeneratePrimitive("polygon vertex is not finite")
        if verts and abs(v - verts[-1]) <= EPS:
            continue
        verts.append(v)
    while len(verts) > 1 and abs(verts[0] - verts[-1]) <= EPS:
        verts.pop()
    if len(verts) < 3:
        raise DegeneratePrimitive("polygon needs at least 3 distinct vertices")
    n = len(verts)
    for i in range(n):
        a0, a1 = verts[i], verts[(i + 1) % n]
        for j in range(i + 1, n):
            b0, b1 = verts[j], verts[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges share one vertex; reject only a fold-back
                shared = a1 if j == i + 1 else a0
                other_a = a0 if j == i + 1 else a1
                other_b = b1 if j == i + 1 else b0
                if _orient(shared, other_a, other_b) == 0:
                    da, db = other_a - shared, other_b - shared
                    if (da * db.conjugate()).real > 0:
                        raise SelfIntersectingPolygon(f"edges {i} and {j} fold back on each other")
                continue
            if segments_intersect(a0, a1, b0, b1):
                raise SelfIntersectingPolygon(f"edges {i} and {j} intersect")
    a = signed_area(verts)
    if abs(a) <= EPS:
        raise DegeneratePrimitive("polygon has zero area")
    if a < 0:
        verts = verts[::-1]
    return Polygon(verts)


def _primitives_touch(a, b):
    """Closed primitives a, b intersect (within EPS)."""
    return _set_distance(a, b) <= 1e-9


def boundary_pieces(p):
    if isinstance(p, Polygon):
        return [("seg", e0, e1) for e0, e1 in edges(p)]
    if isinstance(p, Segment):
        return [("seg", p.p, p.q)]
    return [("circ", p.center, p.radius)]


def _piece_distance(x, y):
    if x[0] == "seg" and y[0] == "seg":
        a, b, c, d = x[1], x[2], y[1], y[2]
        if segments_intersect(a, b, c, d):
            return 0.0
        return float(min(point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                         point_segment_distance(c, a, b), point_segment_distance(d, a, b)))
    if x[0] == "circ" and y[0] == "circ":
        dd = abs(x[1] - y[1])
        r1, r2 = x[2], y[2]
        if abs(r1 - r2) <= dd <= r1 + r2:
            return 0.0
        return min(abs(dd - r1 - r2), abs(abs(r1 - r2) - dd))
    if x[0] == "circ":
        x, y = y, x
    a, b, c, r = x[1], x[2], y[1], y[2]
    near = float(point_segment_distance(c, a, b))
    far = max(abs(a - c), abs(b - c))
    if near <= r <= far:
        return 0.0
    return min(abs(near - r), abs(far - r))


def _set_distance(a, b):
    # sets meet iff their boundaries meet or one contains a point of the other
    if contains(b, _representative(a)) or contains(a, _representative(b)):
        return 0.0
    return min(_piece_distance(x, y) for x in boundary_pieces(a) for y in boundary_pieces(b))


def _representative(p):
    if isinstance(p, Polygon):
        return p.vertices[0]
    if isinstance(p, Disk):
        return p.center
    if isinstance(p, Circle):
        return p.center + p.radius
    return p.p


def validate(s):
    """Check invariants and return the normalized set.

    Polygons are de-duplicated and reoriented counterclockwise; unions are
    flattened and checked for connectivity through pairwise contact.
    """
    if isinstance(s, Polygon):
        return _normalize_polygon(s)
    if isinstance(s, (Disk, Circle)):
        if not (math.isfinite(s.center.real) and math.isfinite(s.center.imag)):
            raise DegeneratePrimitive("center is not finite")
        if not (s.radius > 0 and math.isfinite(s.radius)):
            raise DegeneratePrimitive(f"radius must be positive, got {s.radius}")
        return s
    if isinstance(s, Segment):
        for z in (s.p, s.q):
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise DegeneratePrimitive("segment endpoint is not finite")
        if abs(s.q - s.p) <= EPS:
            raise DegeneratePrimitive("segment endpoints coincide")
        return s
    if isinstance(s, ConnectedUnion):
        parts = [validate(p) for p in iter_parts(s)]
        if not parts:
            raise DegeneratePrimitive("empty union")
        if len(parts) == 1:
            return parts[0]
        n = len(parts)
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in range(n):
                if j not in seen and _primitives_touch(parts[i], parts[j]):
                    seen.add(j)
                    frontier.append(j)
        if len(seen) != n:
            raise DisconnectedUnion(f"union splits into pieces; {n - len(seen)} part(s) unreachable")
        return ConnectedUnion(tuple(parts))
    raise InputError(f"not a planar set: {s!r}")


# ---------------------------------------------------------------------------
# containment and distances


def _polygon_contains(poly, w):
    v = poly.vertices
    n = len(v)
    inside = False
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if (a.imag > w.imag) != (b.imag > w.imag):
            x = a.real + (w.imag - a.imag) * (b.real - a.real) / (b.imag - a.imag)
            if x > w.real:
                inside = not inside
    return inside


def distance_to_boundary(s, w):
    """Distance from ``w`` to the union of the parts' boundaries (thin parts included)."""
    w = complex(w)
    best = math.inf
    for p in iter_parts(s):
        for piece in boundary_pieces(p):
            if piece[0] == "seg":
                best = min(best, float(point_segment_distance(w, piece[1], piece[2])))
            else:
                best = min(best, abs(abs(w - piece[1]) - piece[2]))
    return best


def contains(s, w, tol=1e-9):
    """Closed-set membership of ``w`` with absolute tolerance ``tol``."""
    w = complex(w)
    for p in iter_parts(s):
        if isinstance(p, Polygon):
            if _polygon_contains(p, w) or distance_to_boundary(p, w) <= tol:
                return True
        elif isinstance(p, Disk):
            if abs(w - p.center) <= p.radius + tol:
                return True
        elif isinstance(p, Circle):
            if abs(abs(w - p.center) - p.radius) <= tol:
                return True
        elif float(point_segment_distance(w, p.p, p.q)) <= tol:
            return True
    return False


def boundary_points(s, n_per_part=256):
    """Points sampled along every part's boundary, roughly uniform in arclength."""
    pts = []
    for p in iter_parts(s):
        if isinstance(p, (Disk, Circle)):
            t = 2 * np.pi * np.arange(n_per_part) / n_per_part
            pts.append(p.center + p.radius * np.exp(1j * t))
        elif isinstance(p, Segment):
            t = np.linspace(0.0, 1.0, n_per_part)
            pts.append(p.p + t * (p.q - p.p))
        else:
            es = edges(p)
            lengths = np.array([abs(b - a) for a, b in es])
            counts = np.maximum(1, np.round(n_per_part * lengths / lengths.sum())).astype(int)
            for (a, b), c in zip(es, counts):
                t = np.arange(c) / c
                pts.append(a + t * (b - a))
    return np.concatenate(pts)


# ---------------------------------------------------------------------------
# slices


def _polygon_slice_pairs(verts, u, side):
    """Intervals of the polygon on ``Re w = u``.

    side = +1 / -1 gives the one-sided limit slice (u -> u+ / u-); side = 0 the
    closed slice, which adds vertical edges and vertices lying on the line.
    """
    n = len(verts)
    pairs = []
    if side == 0:
        pairs += _polygon_slice_pairs(verts, u, 1)
        pairs += _polygon_slice_pairs(verts, u, -1)
        for i in range(n):
            a, b = verts[i], verts[(i + 1) % n]
            if a.real == u:
                pairs.append((a.imag, a.imag))
                if b.real == u:
                    pairs.append((a.imag, b.imag))
        return pairs
    ys = []
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        lo, hi = min(a.real, b.real), max(a.real, b.real)
        hit = (lo <= u < hi) if side > 0 else (lo < u <= hi)
        if hit:
            if u == a.real:
                ys.append(a.imag)
            elif u == b.real:
                ys.append(b.imag)
            else:
                ys.append(a.imag + (u - a.real) * (b.imag - a.imag) / (b.real - a.real))
    ys.sort()
    return [(ys[i], ys[i + 1]) for i in range(0, len(ys) - 1, 2)]


def _part_slice_pairs(p, u, side):
    if isinstance(p, Polygon):
        return _polygon_slice_pairs(p.vertices, u, side)
    if isinstance(p, Disk):
        dx = u - p.center.real
        if abs(dx) > p.radius:
            return []
        h = math.sqrt(max(p.radius**2 - dx * dx, 0.0))
        return [(p.center.imag - h, p.center.imag + h)]
    if isinstance(p, Circle):
        dx = u - p.center.real
        if abs(dx) > p.radius:
            return []
        h = math.sqrt(max(p.radius**2 - dx * dx, 0.0))
        return [(p.center.imag - h, p.center.imag - h), (p.center.imag + h, p.center.imag + h)]
    # segment
    a, b = p.p, p.q
    if a.real == b.real:
        if side == 0 and a.real == u:
            return [(a.imag, b.imag)]
        return []
    lo, hi = min(a.real, b.real), max(a.real, b.real)
    inside = lo <= u <= hi if side == 0 else ((lo <= u < hi) if side > 0 else (lo < u <= hi))
    if not inside:
        return []
    y = a.imag + (u - a.real) * (b.imag - a.imag) / (b.real - a.real)
    return [(y, y)]


def _slice(s, u, side=0):
    pairs = []
    for p in iter_parts(s):
        pairs += _part_slice_pairs(p, u, side)
    return IntervalSet.from_pairs(pairs)


def vertical_slice(s, u):
    """Intersection of the set with the line ``Re w = u`` as intervals in ``Im w``."""
    return _slice(s, float(u), 0)


def _snap_to_axis(s, tol):
    """Round real parts within ``tol`` of zero to exactly zero (undoes rotation noise)."""

    def snap(z):
        return complex(0.0, z.imag) if abs(z.real) <= tol else z

    if isinstance(s, Polygon):
        return Polygon([snap(v) for v in s.vertices])
    if isinstance(s, Segment):
        return Segment(snap(s.p), snap(s.q))
    if isinstance(s, (Disk, Circle)):
        return type(s)(snap(s.center), s.radius)
    return ConnectedUnion(tuple(_snap_to_axis(p, tol) for p in s.parts))


def line_slice(s, w0, phi):
    """Intersection with ``{w0 + t e^{i phi}}`` as intervals in ``t``."""
    rot = 1j * complex(math.cos(phi), -math.sin(phi))
    frame = affine(s, rot, -rot * complex(w0))
    x_lo, x_hi, y_lo, y_hi = bounding_box(frame)
    scale = max(x_hi - x_lo, y_hi - y_lo, abs(x_lo), abs(x_hi), 1.0)
    return vertical_slice(_snap_to_axis(frame, 4 * EPS * scale), 0.0)


def line_slice_measure(s, w0, phi):
    """Linear measure of the set's intersection with the line through ``w0`` at angle ``phi``."""
    return line_slice(s, w0, phi).measure


# ---------------------------------------------------------------------------
# Steiner symmetrization


def _breakpoints(parts):
    xs = set()
    polys = []
    for p in parts:
        if isinstance(p, Polygon):
            xs.update(v.real for v in p.vertices)
            polys.append(p)
        elif isinstance(p, (Disk, Circle)):
            xs.update((p.center.real - p.radius, p.center.real + p.radius))
        else:
            xs.update((p.p.real, p.q.real))
    # edges of different polygons may cross; the slice measure bends there
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            for a, b in edges(polys[i]):
                for c, d in edges(polys[j]):
                    x = _crossing_abscissa(a, b, c, d)
                    if x is not None:
                        xs.add(x)
    return sorted(xs)


def _crossing_abscissa(a, b, c, d):
    r, s = b - a, d - c
    den = _cross(r, s)
    if den == 0.0:
        return None
    t = _cross(c - a, s) / den
    q = _cross(c - a, r) / den
    if -EPS <= t <= 1 + EPS and -EPS <= q <= 1 + EPS:
        return (a + t * r).real
    return None


def _steiner_profile(s, parts, n_slices):
    """Half-height profile of E* as a chain of (u, h) plus vertical spikes."""
    xs = _breakpoints(parts)
    disks = [p for p in parts if isinstance(p, Disk)]
    chain = []
    spikes = []
    for i, x in enumerate(xs):
        h_left = _slice(s, x, -1).measure / 2 if i > 0 else 0.0
        h_right = _slice(s, x, 1).measure / 2 if i < len(xs) - 1 else 0.0
        h_closed = _slice(s, x, 0).measure / 2
        if i > 0:
            chain.append((x, h_left))
        if h_closed > max(h_left, h_right) + EPS:
            spikes.append((x, h_closed))
        if i < len(xs) - 1:
            chain.append((x, h_right))
            nxt = xs[i + 1]
            curved = any(d.center.real - d.radius < nxt and d.center.real + d.radius > x for d in disks)
            if curved:
                k = np.arange(1, n_slices + 1)
                # cosine spacing resolves the square-root ends of disk slices
                us = x + (nxt - x) * 0.5 * (1 - np.cos(np.pi * k / (n_slices + 1)))
                for u in us:
                    chain.append((float(u), _slice(s, float(u), 0).measure / 2))
    return chain, spikes


def _drop_collinear(points):
    out = []
    for p in points:
        if out and abs(p - out[-1]) <= EPS:
            continue
        out.append(p)
    if len(out) > 1 and abs(out[0] - out[-1]) <= EPS:
        out.pop()
    changed = True
    while changed and len(out) > 3:
        changed = False
        n = len(out)
        for i in range(n):
            a, b, c = out[i - 1], out[i], out[(i + 1) % n]
            scale = max(abs(a - b), abs(c - b), 1e-300)
            if abs(_cross(b - a, c - b)) <= 1e-12 * scale * scale and ((b - a) * (c - b).conjugate()).real >= 0:
                out.pop(i)
                changed = True
                break
    return out


def _profile_to_set(chain, spikes, real_extent=None):
    pieces = []
    run = []
    flat = []

    def close_run():
        if len(run) >= 2 and any(h > EPS for _, h in run):
            lower = [complex(u, -h) for u, h in run]
            upper = [complex(u, h) for u, h in reversed(run)]
            verts = _drop_collinear(lower + upper)
            if len(verts) >= 3 and abs(signed_area(verts)) > EPS:
                pieces.append(Polygon(verts))
        run.clear()

    # split into runs of positive half-height; zero stretches become axis segments
    for idx, (u, h) in enumerate(chain):
        if h <= EPS:
            if run:
                run.append((u, 0.0))
                close_run()
            if idx + 1 < len(chain) and chain[idx + 1][1] <= EPS and chain[idx + 1][0] > u:
                flat.append((u, chain[idx + 1][0]))
            run.append((u, 0.0))
        else:
            run.append((u, h))
    close_run()

    pieces += [Segment(lo, hi) for lo, hi in merge_intervals(flat)]
    if real_extent is not None:
        lo, hi = real_extent
        pieces.append(Segment(lo, hi))
    for x, h in spikes:
        pieces.append(Segment(complex(x, -h), complex(x, h)))
    return pieces


def _steiner_fat(p, n_slices):
    if isinstance(p, Disk):
        return [Disk(p.center.real, p.radius)]
    chain, spikes = _steiner_profile(p, [p], n_slices)
    return _profile_to_set(chain, spikes)


def _assemble(pieces):
    pieces = _simplify_axis_segments(pieces)
    if len(pieces) == 1:
        return pieces[0]
    return ConnectedUnion(tuple(pieces))


def _simplify_axis_segments(pieces):
    fat = [p for p in pieces if not is_thin(p)]
    axis = []
    rest = []
    for p in pieces:
        if isinstance(p, Segment) and p.p.imag == 0.0 and p.q.imag == 0.0:
            axis.append((min(p.p.real, p.q.real), max(p.p.real, p.q.real)))
        elif is_thin(p):
            rest.append(p)
    out = list(fat)
    for lo, hi in merge_intervals(axis):
        seg = Segment(complex(lo, 0.0), complex(hi, 0.0))
        if hi - lo <= EPS:
            continue
        # drop axis pieces already covered by a fat part
        if fat and all(any(contains(f, complex(u, 0.0), 1e-12) for f in fat) for u in np.linspace(lo, hi, 9)):
            continue
        out.append(seg)
    for p in rest:
        if fat and any(contains(f, p.p, 1e-12) and contains(f, p.q, 1e-12) and _segment_inside_fat(f, p) for f in fat):
            continue
        out.append(p)
    return out


def _segment_inside_fat(f, seg):
    return all(contains(f, seg.p + t * (seg.q - seg.p), 1e-12) for t in np.linspace(0, 1, 9))


def steiner_symmetrize(s, n_slices=64):
    """Steiner symmetrization with respect to the real axis.

    Polygonal input is handled exactly: the half-height ``mu(u)/2`` is
    piecewise linear between vertex abscissae (and crossings of edges from
    different polygons), and its one-sided limits at every breakpoint are
    computed directly. A lone disk maps to a disk; disks inside unions with
    other area-carrying parts are sampled with ``n_slices`` points per piece.
    """
    if n_slices < 2:
        raise ValueError("n_slices must be at least 2")
    if isinstance(s, Disk):
        return Disk(s.center.real, s.radius)
    if isinstance(s, Circle):
        return Segment(s.center.real - s.radius, s.center.real + s.radius)
    if isinstance(s, Segment):
        if s.p.real == s.q.real:
            half = abs(s.q - s.p) / 2
            return Segment(complex(s.p.real, -half), complex(s.p.real, half))
        return Segment(min(s.p.real, s.q.real), max(s.p.real, s.q.real))

    parts = list(iter_parts(s))
    fat = [p for p in parts if not is_thin(p)]
    thin = [p for p in parts if is_thin(p)]
    x_lo, x_hi, _, _ = bounding_box(s)

    if len(fat) == 1:
        pieces = _steiner_fat(fat[0], n_slices)
        f_lo, f_hi, _, _ = bounding_box(fat[0])
        for t in thin:
            if isinstance(t, Segment) and t.p.real == t.q.real:
                u = t.p.real
                h = vertical_slice(s, u).measure / 2
                if not (f_lo < u < f_hi) or h > vertical_slice(fat[0], u).measure / 2 + EPS:
                    pieces.append(Segment(complex(u, -h), complex(u, h)))
        if x_lo < f_lo - EPS or x_hi > f_hi + EPS:
            pieces.append(Segment(complex(x_lo, 0.0), complex(x_hi, 0.0)))
        return _assemble(pieces)

    if not fat:
        pieces = []
        if x_hi - x_lo > EPS:
            pieces.append(Segment(complex(x_lo, 0.0), complex(x_hi, 0.0)))
        for t in thin:
            if isinstance(t, Segment) and t.p.real == t.q.real:
                h = vertical_slice(s, t.p.real).measure / 2
                pieces.append(Segment(complex(t.p.real, -h), complex(t.p.real, h)))
        return _assemble(pieces)

    chain, spikes = _steiner_profile(s, parts, n_slices)
    return _assemble(_profile_to_set(chain, spikes))


# ---------------------------------------------------------------------------
# circle symmetrization


def radial_symmetrize(slice_intervals):
    """Replace a radial slice by ``[1/R, R]`` with the same logarithmic measure."""
    log_measure = sum(math.log(hi / lo) for lo, hi in slice_intervals if hi > lo)
    radius = math.exp(0.5 * log_measure)
    return (1.0 / radius, radius)


def normalize_circle_frame(s, v):
    """Image of the set under ``w -> w/v - i``, which sends ``|w - iv| = v`` to ``|w| = 1``."""
    return affine(s, 1.0 / v, -1j)


def circle_symmetrize(s, v, n_rays=256):
    """Symmetrization with respect to the circle ``|w - iv| = v``, sampled on rays.

    Rays leave ``i*v`` (the origin of the normalized frame). For every ray that
    meets the set, ``R(theta) = exp(1/2 * int d(rho)/rho)`` over the slice.
    """
    if v <= 0:
        raise ValueError("v must be positive")
    if n_rays < 8:
        raise ValueError("n_rays must be at least 8")
    frame = normalize_circle_frame(s, v)
    if contains(frame, 0.0, 1e-12):
        raise OriginInSet(f"the point {complex(0, v)} lies in the set")
    samples = []
    logs = []
    for theta in 2 * np.pi * np.arange(n_rays) / n_rays:
        ray = line_slice(frame, 0.0, float(theta)).clip(lo=0.0)
        if ray.empty:
            continue
        log_measure = sum(math.log(hi / lo) for lo, hi in ray.intervals if hi > lo)
        samples.append((float(theta), math.exp(0.5 * log_measure)))
        logs.append(log_measure)
    return SampledRadialSet(float(v), tuple(samples), tuple(logs))


# ---------------------------------------------------------------------------
# corollary geometry


def _exposed_edge_pieces(a, b, others):
    length = abs(b - a)
    phi = cmath.phase(b - a)
    covered = []
    for q in others:
        covered += line_slice(q, a, phi).clip(0.0, length).intervals
    free = []
    cursor = 0.0
    for lo, hi in merge_intervals(covered):
        if lo > cursor:
            free.append((cursor, lo))
        cursor = max(cursor, hi)
    if cursor < length:
        free.append((cursor, length))
    d = (b - a) / length
    return [(a + lo * d, a + hi * d) for lo, hi in free]


def _exposed_arcs(disk, others, n=720):
    t = 2 * np.pi * np.arange(n) / n
    pts = disk.center + disk.radius * np.exp(1j * t)
    keep = np.array([not any(interior_contains(q, z) for q in others) for z in pts])
    return pts[keep]


def interior_contains(q, w, tol=1e-12):
    if isinstance(q, Disk):
        return abs(w - q.center) < q.radius - tol
    if isinstance(q, Polygon):
        return _polygon_contains(q, w) and distance_to_boundary(q, w) > tol
    return False


def largest_inscribed_radius(s, w0):
    """Radius of the largest disk centred at ``w0`` contained in the set (0 off the interior)."""
    w0 = complex(w0)
    fat = [p for p in iter_parts(s) if not is_thin(p)]
    if not fat or not contains(s, w0, 0.0):
        return 0.0
    best = math.inf
    for i, p in enumerate(fat):
        others = fat[:i] + fat[i + 1:]
        if isinstance(p, Polygon):
            for a, b in edges(p):
                for c, d in _exposed_edge_pieces(a, b, others):
                    best = min(best, float(point_segment_distance(w0, c, d)))
        else:
            if not others:
                best = min(best, abs(p.radius - abs(w0 - p.center)))
            else:
                pts = _exposed_arcs(p, others)
                if len(pts):
                    best = min(best, float(np.min(np.abs(pts - w0))))
    return 0.0 if best == math.inf else max(best, 0.0)


def is_symmetric_real(s, tol=1e-9):
    """Symmetry about the real axis, tested slice by slice at breakpoints and midpoints."""
    parts = list(iter_parts(s))
    xs = _breakpoints(parts)
    probes = list(xs) + [0.5 * (a + b) for a, b in zip(xs[:-1], xs[1:])]
    probes += [a + (b - a) * f for a, b in zip(xs[:-1], xs[1:]) for f in (0.2113, 0.7887)]
    for u in probes:
        sl = vertical_slice(s, u).intervals
        mirrored = tuple(sorted((-hi, -lo) for lo, hi in sl))
        if len(sl) != len(mirrored):
            return False
        for (a, b), (c, d) in zip(sl, mirrored):
            if abs(a - c) > tol or abs(b - d) > tol:
                return False
    return True
