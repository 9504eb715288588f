"""Checkable reports for the symmetrization inequalities and their corollaries.

Every report orients its slack as (bound side) - (bounded side), so a check
passes when ``slack >= -tol`` and an equality case shows ``|slack| <= tol``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import geometry as geo
from .capacity import functional_from_map, logcap_from_map
from .confmap import SCMap, exterior_map, solve_rectangle_params
from .errors import (
    ContainmentViolated,
    InputError,
    SliceHypothesisViolated,
    SteinsymError,
    ZeroMeasureSlice,
)

NAMES = ("polya_szego", "theorem1", "theorem2", "schiffer6", "corollary1", "corollary2", "m_bound")
CLOSED_FORM_TOL = 1e-8
SC_TOL = 1e-5


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    tol: float
    inputs_digest: str
    error: str | None = None

    @property
    def passed(self):
        return self.error is None and self.slack >= -self.tol

    def to_dict(self):
        out = asdict(self)
        out["pass"] = self.passed
        return out


def _report(name, bound, bounded, tol, digest, lhs_is_bound):
    lhs, rhs = (bound, bounded) if lhs_is_bound else (bounded, bound)
    return InequalityReport(name, float(lhs), float(rhs), float(bound - bounded), float(tol), digest)


def failed_report(name, digest, exc):
    return InequalityReport(name, math.nan, math.nan, math.nan, 0.0, digest, f"{type(exc).__name__}: {exc}")


def _default_tol(*maps):
    return SC_TOL if any(isinstance(f, SCMap) for f in maps) else CLOSED_FORM_TOL


def _digest(s):
    parts = list(geo.iter_parts(s))
    kinds = ",".join(type(p).__name__ for p in parts)
    return f"{type(s).__name__}[{kinds}]" if isinstance(s, geo.ConnectedUnion) else kinds


# ---------------------------------------------------------------------------
# the hcap functional and Polya-Szego under Steiner symmetrization


def symmetrized_pair(s):
    """``(f, f_star)``: exterior maps of the set and of its Steiner symmetrization."""
    s = geo.validate(s)
    return exterior_map(s), exterior_map(geo.steiner_symmetrize(s))


def check_theorem1(s, tol=None):
    """``|a1|^2 - Re a1 a_-1 >= |a1*|^2 - Re a1* a_-1*`` for the set and its Steiner image."""
    f, f_star = symmetrized_pair(s)
    tol = _default_tol(f, f_star) if tol is None else tol
    return _report("theorem1", functional_from_map(f), functional_from_map(f_star), tol, _digest(s), True)


def check_polya_szego(s, tol=None):
    """``|a1| >= |a1*|``: capacity does not increase under Steiner symmetrization."""
    f, f_star = symmetrized_pair(s)
    tol = _default_tol(f, f_star) if tol is None else tol
    return _report("polya_szego", logcap_from_map(f), logcap_from_map(f_star), tol, _digest(s), True)


# ---------------------------------------------------------------------------
# comparison with a continuum inside the symmetrized set


def boundary_samples(s, n=1024):
    pts = geo.boundary_points(s, n)
    if len(pts) > n:
        pts = pts[np.linspace(0, len(pts) - 1, n).astype(int)]
    return pts


def check_theorem2(outer, inner, tol=None, containment_tol=1e-9):
    """Functional of ``outer*`` bounds that of any continuum ``inner`` inside ``outer*``."""
    outer = geo.validate(outer)
    inner = geo.validate(inner)
    star = geo.steiner_symmetrize(outer)
    for w in boundary_samples(inner):
        if not geo.contains(star, w, containment_tol):
            raise ContainmentViolated(f"inner point {complex(w):.6g} lies outside the symmetrized outer set")
    f_star, f_inner = exterior_map(star), exterior_map(inner)
    tol = _default_tol(f_star, f_inner) if tol is None else tol
    digest = f"outer={_digest(outer)}; inner={_digest(inner)}"
    return _report("theorem2", functional_from_map(f_star), functional_from_map(f_inner), tol, digest, True)


# ---------------------------------------------------------------------------
# Schiffer's comparison on disk exteriors


def schiffer_side(v, rho):
    """``log[r(G, iv) r(G, inf)] - 2 g_G(iv, inf)`` for ``G = {|w| > rho}``."""
    inner_at_point = (v * v - rho * rho) / rho
    inner_at_infinity = 1.0 / rho
    green = math.log(v / rho)
    return math.log(inner_at_point * inner_at_infinity) - 2.0 * green


def check_schiffer_disks(v, rho1, rho2, tol=1e-12):
    """Schiffer's comparison for ``G1 = {|w| > rho1}`` inside ``G2 = {|w| > rho2}``, at ``iv`` and infinity."""
    if not (0.0 < rho2 <= rho1 < v):
        raise InputError(f"need 0 < rho2 <= rho1 < v, got v={v}, rho1={rho1}, rho2={rho2}")
    lhs = schiffer_side(v, rho1)
    rhs = schiffer_side(v, rho2)
    digest = f"v={v:g}, rho1={rho1:g}, rho2={rho2:g}"
    return _report("schiffer6", rhs, lhs, tol, digest, False)


# ---------------------------------------------------------------------------
# line measure and inradius at capacity one


def sigma_normalized(s, w0=None):
    """Scale the set to capacity 1; returns ``(scaled_set, scaled_w0, a_minus1)`` of its Sigma map."""
    f = exterior_map(geo.validate(s))
    t = 1.0 / abs(f.a1)
    a_minus1 = f.a1 * f.a_minus1 / abs(f.a1) ** 2
    scaled = geo.affine(s, t)
    return scaled, (None if w0 is None else complex(w0) * t), complex(a_minus1)


def _resolve_sigma(s, w0, a_minus1, fmap, tol):
    if fmap is not None:
        if abs(fmap.a1 - 1.0) > tol:
            raise InputError(f"map is not in class Sigma: a1 = {fmap.a1}")
        return geo.validate(s), complex(w0), complex(fmap.a_minus1)
    if a_minus1 is not None:
        return geo.validate(s), complex(w0), complex(a_minus1)
    return sigma_normalized(geo.validate(s), w0)


def corollary1_sides(s, w0, phi, a_minus1):
    m = geo.line_slice_measure(s, w0, phi)
    if m <= 0.0:
        raise ZeroMeasureSlice(f"the line through {w0} at angle {phi} meets the set in measure zero")
    R = geo.largest_inscribed_radius(s, w0)
    lhs = (m**4 + 16.0 * R**4) / (8.0 * m * m)
    rhs = 1.0 + (np.exp(-2j * phi) * a_minus1).real
    return lhs, rhs, m, R


def check_corollary1(s, w0, phi, a_minus1=None, fmap=None, tol=1e-6):
    """``(m^4 + 16 R^4) / (8 m^2) <= 1 + Re(e^{-2i phi} a_-1)`` for ``f`` in Sigma.

    Without ``a_minus1`` or ``fmap`` the set is scaled to capacity 1 and the
    coefficient comes from its exterior map.
    """
    s, w0, a_minus1 = _resolve_sigma(s, w0, a_minus1, fmap, tol)
    if not geo.contains(s, w0, 1e-9):
        raise InputError(f"w0 = {w0} is not a point of the set")
    lhs, rhs, m, R = corollary1_sides(s, w0, phi, a_minus1)
    digest = f"{_digest(s)}; w0={w0:.6g}; phi={phi:.6g}; m={m:.12g}; R={R:.12g}; a_-1={a_minus1:.12g}"
    return _report("corollary1", rhs, lhs, tol, digest, False)


def corollary1_consequences(s, w0, a_minus1=None, fmap=None, tol=1e-9):
    """The two line-measure bounds along ``arg(a_-1)/2`` and the perpendicular direction."""
    s, w0, a_minus1 = _resolve_sigma(s, w0, a_minus1, fmap, tol)
    size = abs(a_minus1)
    theta = 0.5 * math.atan2(a_minus1.imag, a_minus1.real)
    along = geo.line_slice_measure(s, w0, theta)
    across = geo.line_slice_measure(s, w0, theta + 0.5 * math.pi)
    digest = f"{_digest(s)}; w0={w0:.6g}; |a_-1|={size:.12g}"
    return [
        _report("m_bound", math.sqrt(8.0 * (1.0 + size)), along, tol, digest + "; along arg/2", False),
        _report("m_bound", 4.0, math.sqrt(8.0 * (1.0 + size)), tol, digest + "; sqrt(8(1+|a|)) <= 4", False),
        _report("m_bound", math.sqrt(max(8.0 * (1.0 - size), 0.0)), across, tol, digest + "; across", False),
    ]


def interior_probe_points(s):
    """A few points of the set: the bounding-box centre if inside, plus one point per part."""
    x_lo, x_hi, y_lo, y_hi = geo.bounding_box(s)
    probes = [complex(0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi))]
    for p in geo.iter_parts(s):
        if isinstance(p, geo.Polygon):
            v = np.array(p.vertices)
            probes.append(complex(v.mean()))
            probes.append(complex(v[0]))
        elif isinstance(p, (geo.Disk, geo.Circle)):
            probes += [p.center, p.center + p.radius]
        else:
            probes += [0.5 * (p.p + p.q), p.p]
    return [w for w in probes if geo.contains(s, w, 1e-9)]


def check_m_bound(s, n_phi=64, tol=1e-9):
    """Classical ``m_f(w0, phi) <= 4`` over sampled directions and probe points, at capacity 1."""
    scaled, _, _ = sigma_normalized(geo.validate(s))
    worst = -math.inf
    for w0 in interior_probe_points(scaled):
        for phi in np.pi * np.arange(n_phi) / n_phi:
            worst = max(worst, geo.line_slice_measure(scaled, w0, float(phi)))
    return _report("m_bound", 4.0, worst, tol, f"{_digest(s)}; {n_phi} directions", False)


# ---------------------------------------------------------------------------
# vertical-slice hypothesis and the Re a_-1 bound


def slice_hypothesis_holds(s, alpha, beta, gamma, n_probe=257, tol=1e-9):
    """Every vertical slice over ``[beta, gamma]`` has measure at least ``alpha``."""
    us = set(np.linspace(beta, gamma, n_probe).tolist())
    for p in geo.iter_parts(s):
        if isinstance(p, geo.Polygon):
            us.update(v.real for v in p.vertices if beta <= v.real <= gamma)
    return all(geo.vertical_slice(s, u).measure >= alpha - tol for u in sorted(us))


def corollary2_bound(alpha, beta, gamma):
    params = solve_rectangle_params(alpha, beta, gamma)
    return 1.0 - 0.5 * params.c**2 * (1.0 - params.k**2), params


def check_corollary2(s, alpha, beta, gamma, a_minus1=None, fmap=None, tol=1e-10):
    """``Re a_-1 <= 1 - (c^2/2)(1 - k^2)`` when every slice over ``[beta, gamma]`` has measure ``>= alpha``.

    Without ``a_minus1`` or ``fmap`` the set (and ``alpha, beta, gamma``) are
    scaled to capacity 1 first.
    """
    s = geo.validate(s)
    if not slice_hypothesis_holds(s, alpha, beta, gamma):
        raise SliceHypothesisViolated(f"some vertical slice over [{beta}, {gamma}] has measure below {alpha}")
    if fmap is not None:
        if abs(fmap.a1 - 1.0) > tol:
            raise InputError(f"map is not in class Sigma: a1 = {fmap.a1}")
        a_minus1 = fmap.a_minus1
    elif a_minus1 is None:
        f = exterior_map(s)
        t = 1.0 / abs(f.a1)
        a_minus1 = f.a1 * f.a_minus1 / abs(f.a1) ** 2
        alpha, beta, gamma = alpha * t, beta * t, gamma * t
    bound, params = corollary2_bound(alpha, beta, gamma)
    digest = f"{_digest(s)}; alpha={alpha:.12g}; beta={beta:.12g}; gamma={gamma:.12g}; c={params.c:.15g}; k={params.k:.15g}"
    return _report("corollary2", bound, complex(a_minus1).real, tol, digest, False)


def rectangle_extremal(k, center=0.0):
    """Rectangle of capacity 1 (``c = 2``) for modulus ``k``: ``(set, alpha, beta, gamma)``."""
    from .confmap import elliptic_side_integrals

    A, B = elliptic_side_integrals(k)
    half_w, half_h = 2.0 * A, 2.0 * B
    x0 = complex(center)
    verts = [x0 + complex(-half_w, -half_h), x0 + complex(half_w, -half_h), x0 + complex(half_w, half_h), x0 + complex(-half_w, half_h)]
    return geo.Polygon(tuple(verts)), 2.0 * half_h, x0.real - half_w, x0.real + half_w


# ---------------------------------------------------------------------------
# corpus


def run_corpus(scenes, tol=None):
    """The functional and Polya-Szego checks on every scene, plus the comparison check where an inner set is given.

    Failures are recorded in the reports; order follows the input.
    """
    reports = []
    for scene in scenes:
        name = getattr(scene, "name", "scene")
        s = getattr(scene, "set", scene)
        checks = [("theorem1", lambda: check_theorem1(s, tol)), ("polya_szego", lambda: check_polya_szego(s, tol))]
        inner = getattr(scene, "inner", None)
        if inner is not None:
            checks.append(("theorem2", lambda: check_theorem2(s, inner, tol)))
        for label, run in checks:
            try:
                rep = run()
                rep = InequalityReport(rep.name, rep.lhs, rep.rhs, rep.slack, rep.tol, f"{name}: {rep.inputs_digest}")
            except SteinsymError as exc:
                rep = failed_report(label, name, exc)
            reports.append(rep)
    return reports
