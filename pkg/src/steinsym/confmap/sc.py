"""Exterior Schwarz-Christoffel maps of simple polygons.

The map has the form ``f(z) = A + C * G(z)`` with

    G'(z) = prod_k (1 - z_k / z) ** e_k,     e_k = 1 - theta_k / pi,

where ``theta_k`` is the interior angle at vertex ``w_k`` and ``z_k`` are the
prevertices on the unit circle, in the same counterclockwise order as the
vertices. ``e_k = -beta_k`` in the turning-parameter convention, so the
exponents sum to 2 and ``G'(z) = 1 + O(z^-2)`` once ``sum e_k z_k = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import geometry as geo
from ..errors import InputError, SolverDivergence, TooManyVertices
from ..quadrature import integrate, integrate_split
from .base import ExteriorMap

MAX_VERTICES = 20
_TWO_PI = 2.0 * math.pi
_SERIES_RADIUS = 1.5
_SERIES_TERMS = 200
_QUAD_TOL = 1e-14


@dataclass(frozen=True)
class SCExteriorData:
    vertices: tuple
    prevertices: tuple
    betas: tuple
    C: complex
    A: complex
    residual: float
    boundary_error: float

    @property
    def angles(self):
        return tuple(float(np.angle(z)) % _TWO_PI for z in self.prevertices)


def _interior_angles(verts):
    n = len(verts)
    out = np.empty(n)
    for k in range(n):
        prev_edge = verts[k] - verts[k - 1]
        next_edge = verts[(k + 1) % n] - verts[k]
        turn = np.angle(next_edge / prev_edge)  # left turn > 0 for a CCW polygon
        out[k] = math.pi - turn
    return out


def _drop_collinear(verts, tol=1e-12):
    verts = list(verts)
    changed = True
    while changed and len(verts) > 3:
        changed = False
        for k in range(len(verts)):
            a, b, c = verts[k - 1], verts[k], verts[(k + 1) % len(verts)]
            scale = max(abs(b - a), abs(c - b))
            cross = ((b - a).conjugate() * (c - b)).imag
            dot = ((b - a).conjugate() * (c - b)).real
            if abs(cross) <= tol * scale * scale and dot > 0:
                del verts[k]
                changed = True
                break
    return verts


def _arc_integrand(t_all, expo):
    """``d/dt G(e^{it})`` on the unit circle in the stable sine form."""

    def phi(t):
        t = np.real(np.asarray(t))
        sigma = np.mod(t[:, None] - t_all[None, :], _TWO_PI)
        mag = np.sum(expo * np.log(2.0 * np.sin(0.5 * sigma)), axis=1)
        phase = np.sum(expo * (0.5 * math.pi - 0.5 * sigma), axis=1)
        return 1j * np.exp(1j * t) * np.exp(mag + 1j * phase)

    return phi


def _side_integrals(t_all, expo, sides=None):
    """``G(z_{j+1}) - G(z_j)`` along the arc, for the requested side indices."""
    n = len(t_all)
    phi = _arc_integrand(t_all, expo)
    out = []
    for j in range(n) if sides is None else sides:
        a = t_all[j]
        b = t_all[(j + 1) % n] + (_TWO_PI if j == n - 1 else 0.0)
        prev_t = t_all[j - 1] - (_TWO_PI if j == 0 else 0.0)
        next_t = t_all[(j + 2) % n] + (_TWO_PI if j + 2 >= n else 0.0)
        out.append(
            integrate_split(phi, a, b, exp_a=expo[j], exp_b=expo[(j + 1) % n], others=(prev_t, next_t), tol=_QUAD_TOL)
        )
    return np.array(out, dtype=complex)


def _gaps_to_angles(u):
    weights = np.exp(np.append(u, 0.0) - max(np.max(u), 0.0))
    gaps = _TWO_PI * weights / weights.sum()
    return np.concatenate(([0.0], np.cumsum(gaps[:-1])))


def _residual(u, expo, log_ratio):
    t = _gaps_to_angles(u)
    z = np.exp(1j * t)
    s1 = np.sum(expo * z)
    n = len(t)
    ints = _side_integrals(t, expo, sides=range(n - 2))
    res = [s1.real, s1.imag]
    res.extend(np.log(np.abs(ints[1:])) - np.log(np.abs(ints[0])) - log_ratio)
    return np.array(res)


def _newton(expo, log_ratio, u0, tol=1e-12, max_iter=60, fd_step=1e-7):
    # oversized trial steps can collapse a prevertex gap; those trials come back
    # non-finite and are rejected by the line search, so silence their warnings
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return _newton_loop(expo, log_ratio, u0, tol, max_iter, fd_step)


def _newton_loop(expo, log_ratio, u0, tol, max_iter, fd_step):
    u = np.array(u0, dtype=float)
    res = _residual(u, expo, log_ratio)
    norm = np.linalg.norm(res)
    for _ in range(max_iter):
        if norm <= tol:
            break
        jac = np.empty((len(res), len(u)))
        for i in range(len(u)):
            du = np.zeros_like(u)
            du[i] = fd_step
            jac[:, i] = (_residual(u + du, expo, log_ratio) - res) / fd_step
        step = np.linalg.lstsq(jac, -res, rcond=None)[0]
        damping = 1.0
        while damping > 1e-4:
            trial = u + damping * step
            trial_res = _residual(trial, expo, log_ratio)
            trial_norm = np.linalg.norm(trial_res)
            if np.isfinite(trial_norm) and trial_norm < norm:
                break
            damping *= 0.5
        else:
            break
        u, res, norm = trial, trial_res, trial_norm
    return u, norm


def _series_coefficients(z, betas, terms):
    """Coefficients ``c_j`` of ``G(z) = z + sum_{j>=1} c_j z^-j``."""
    m = np.arange(1, terms + 1)
    p = np.array([np.sum(betas * z**k) for k in m]) / m  # log G' = sum p_m z^-m
    q = np.zeros(terms + 1, dtype=complex)
    q[0] = 1.0
    for n in range(1, terms + 1):
        q[n] = np.dot(m[:n] * p[:n], q[n - 1 :: -1][:n]) / n
    nn = np.arange(2, terms + 1)
    return q[2:] / (1.0 - nn)


class SCMap(ExteriorMap):
    """Exterior Schwarz-Christoffel map built from solved :class:`SCExteriorData`."""

    family = "schwarz_christoffel"

    def __init__(self, data, n_terms=_SERIES_TERMS, series_radius=_SERIES_RADIUS):
        self.data = data
        self._z = np.array(data.prevertices, dtype=complex)
        self._expo = -np.array(data.betas, dtype=float)
        self._r0 = float(series_radius)
        self._c = _series_coefficients(self._z, np.array(data.betas), n_terms)
        self.a1 = complex(data.C)
        self.a0 = complex(data.A)
        self.a_minus1 = complex(data.C * self._c[0])

    def g_prime(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        logs = np.log(1.0 - self._z[None, :] / zeta.reshape(-1, 1))
        return np.exp(logs @ self._expo).reshape(zeta.shape)

    def _series(self, z):
        w = 1.0 / z
        acc = np.zeros_like(z)
        for coef in self._c[::-1]:
            acc = (acc + coef) * w
        return z + acc

    def _radial(self, z, start_exponent=0.0):
        """``G(z)`` for ``1 <= |z| < r0`` via the radial path from ``r0 * z/|z|``."""
        direction = z / abs(z)
        top = self._r0 * direction

        def f(s):
            return direction * self.g_prime(s * direction)

        s0 = abs(z)
        if start_exponent:
            gap = np.min(np.abs(self._z - direction)[np.abs(self._z - direction) > 1e-9])
            value = integrate_split(f, s0, self._r0, exp_a=start_exponent, others=(s0 - gap,), tol=_QUAD_TOL)
        else:
            value = integrate(f, s0, self._r0, tol=_QUAD_TOL)[0]
        return self._series(np.array([top]))[0] - value

    def G(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.empty(z.shape, dtype=complex)
        far = np.abs(z) >= self._r0
        out[far] = self._series(z[far])
        for idx in np.flatnonzero(~far):
            zi = z[idx]
            hit = np.abs(self._z - zi) < 1e-13
            if hit.any():
                out[idx] = self._radial(self._z[hit][0], self._expo[hit][0])
            else:
                out[idx] = self._radial(zi)
        return out

    def _evaluate(self, z):
        return self.a0 + self.a1 * self.G(z)

    def params(self):
        d = self.data
        return {
            "vertices": list(d.vertices),
            "prevertex_angles": list(d.angles),
            "betas": list(d.betas),
            "C": d.C,
            "A": d.A,
            "residual": d.residual,
            "boundary_error": d.boundary_error,
        }


def _boundary_error(fmap, verts, n_samples=96):
    t = _TWO_PI * np.arange(n_samples) / n_samples
    pts = fmap(np.exp(1j * t))
    poly = geo.Polygon(tuple(verts))
    err = max(geo.distance_to_boundary(poly, w) for w in pts)
    corners = fmap(np.array(fmap.data.prevertices))
    return max(err, float(np.max(np.abs(corners - np.array(verts)))))


def map_polygon_exterior(polygon, tol=1e-12, check_tol=1e-6):
    """Exterior SC map of a simple polygon with at most 20 non-collinear vertices.

    Raises :class:`TooManyVertices`, or :class:`SolverDivergence` when the
    prevertex solve stalls or the boundary correspondence error exceeds
    ``check_tol`` times the polygon diameter.
    """
    if not isinstance(polygon, geo.Polygon):
        raise InputError("map_polygon_exterior expects a Polygon")
    polygon = geo.validate(polygon)
    verts = _drop_collinear([complex(v) for v in polygon.vertices])
    n = len(verts)
    if n > MAX_VERTICES:
        raise TooManyVertices(f"{n} vertices exceed the limit of {MAX_VERTICES}")
    verts_arr = np.array(verts)
    betas = _interior_angles(verts_arr) / math.pi - 1.0
    expo = -betas
    lengths = np.abs(np.roll(verts_arr, -1) - verts_arr)
    log_ratio = np.log(lengths[1 : n - 2]) - np.log(lengths[0])

    best = None
    starts = [np.zeros(n - 1), np.log(lengths[:-1] / lengths[-1])]
    for u0 in starts:
        u, norm = _newton(expo, log_ratio, u0, tol=tol)
        if best is None or norm < best[1]:
            best = (u, norm)
        if norm <= tol:
            break
    u, norm = best
    if not norm <= max(tol, 1e-10):
        raise SolverDivergence(f"prevertex solve did not converge (residual {norm:.3e})", norm)

    t = _gaps_to_angles(u)
    z = np.exp(1j * t)
    first_side = _side_integrals(t, expo, sides=[0])[0]
    C = (verts_arr[1] - verts_arr[0]) / first_side
    provisional = SCMap(SCExteriorData(tuple(verts), tuple(z), tuple(betas), complex(C), 0j, float(norm), 0.0))
    g_at_vertices = provisional.G(z)
    A = np.mean(verts_arr - C * g_at_vertices)
    data = SCExteriorData(tuple(verts), tuple(z), tuple(betas), complex(C), complex(A), float(norm), 0.0)
    fmap = SCMap(data)
    err = _boundary_error(fmap, verts)
    diam = geo.diameter(polygon)
    if not err <= check_tol * diam:
        raise SolverDivergence(f"boundary correspondence error {err:.3e} exceeds {check_tol:g} x diameter", err)
    fmap.data = SCExteriorData(tuple(verts), tuple(z), tuple(betas), complex(C), complex(A), float(norm), float(err))
    return fmap
