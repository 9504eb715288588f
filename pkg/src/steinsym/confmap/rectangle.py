"""Exterior map of an axis-parallel rectangle through an elliptic-type integral.

The upper half-plane is sent onto the upper half of the rectangle's exterior by

    F(zeta) = c * int_0^zeta sqrt((s^2 - k^2) / (s^2 - 1)) ds + i*alpha/2,

and ``f(z) = F((z + 1/z) / 2)`` extends by reflection to ``|z| > 1``. Side
lengths fix ``c`` and ``k``: ``c*A(k) = (gamma - beta)/2``, ``c*B(k) = alpha/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from ..quadrature import integrate, integrate_split
from .base import ExteriorMap

_QUAD_TOL = 1e-14


def _cos2_over_root(t, m_sin):
    """Integrand cos^2 s / sqrt(cos^2 s + q^2 sin^2 s) with q = m_sin (complement form)."""

    def f(s):
        c, sn = np.cos(s), np.sin(s)
        return c * c / np.sqrt(c * c + m_sin * m_sin * sn * sn)

    return f


def _side_integrals_angle(t):
    """A and B at ``k = sin t``, ``k' = cos t`` (keeps both ends of (0, 1) accurate)."""
    k, kp = math.sin(t), math.cos(t)
    # A = k^2 int cos^2/sqrt(1 - k^2 sin^2), written with 1 - k^2 sin^2 = cos^2 + k'^2 sin^2
    a = k * k * integrate(_cos2_over_root(t, kp), 0.0, math.pi / 2, tol=_QUAD_TOL)[0]
    b = kp * kp * integrate(_cos2_over_root(t, k), 0.0, math.pi / 2, tol=_QUAD_TOL)[0]
    return float(a.real), float(b.real)


def elliptic_side_integrals(k):
    """``A(k) = int_0^k sqrt((k^2-x^2)/(1-x^2)) dx``, ``B(k) = int_k^1 sqrt((x^2-k^2)/(1-x^2)) dx``.

    Evaluated after the substitutions ``x = k sin s`` and
    ``x = sqrt(1 - k'^2 sin^2 s)``, which remove the endpoint square roots.
    """
    if not 0.0 < k < 1.0:
        raise InputError(f"k must lie in (0, 1), got {k}")
    return _side_integrals_angle(math.asin(k))


@dataclass(frozen=True)
class RectangleMapParams:
    c: float
    k: float
    alpha: float
    beta: float
    gamma: float
    residual: float = 0.0

    @property
    def half_width(self):
        return 0.5 * (self.gamma - self.beta)

    @property
    def center_real(self):
        return 0.5 * (self.beta + self.gamma)


def solve_rectangle_params(alpha, beta, gamma, tol=1e-15):
    """Find ``(c, k)`` with ``c A(k) = (gamma-beta)/2`` and ``c B(k) = alpha/2``.

    ``A/B`` increases strictly from 0 to infinity on (0, 1), so bisection in
    ``t = arcsin k`` brackets the root. The degenerate limits ``alpha = 0``
    (horizontal segment, ``k = 1``) and ``beta = gamma`` (vertical segment,
    ``k = 0``) are returned in closed form.
    """
    alpha, beta, gamma = float(alpha), float(beta), float(gamma)
    if alpha < 0 or gamma < beta or (alpha == 0 and gamma == beta):
        raise InputError(f"invalid rectangle alpha={alpha}, beta={beta}, gamma={gamma}")
    width = gamma - beta
    if alpha == 0.0:
        return RectangleMapParams(width / 2, 1.0, alpha, beta, gamma)
    if width == 0.0:
        return RectangleMapParams(alpha / 2, 0.0, alpha, beta, gamma)
    target = width / alpha
    lo, hi = 0.0, math.pi / 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        a, b = _side_integrals_angle(mid)
        if a > target * b:
            hi = mid
        else:
            lo = mid
        if hi - lo <= tol * max(mid, 1e-300):
            break
    t = 0.5 * (lo + hi)
    a, b = _side_integrals_angle(t)
    c = width / (2 * a) if a >= b else alpha / (2 * b)
    residual = max(abs(c * a - width / 2), abs(c * b - alpha / 2))
    return RectangleMapParams(c, math.sin(t), alpha, beta, gamma, residual)


def _integrand(k):
    def g(s):
        # product of principal roots: analytic in the open upper half-plane,
        # positive on (0, k), -i * positive on (k, 1); abs() turns -0.0 into +0.0
        s = s.real + 1j * np.abs(s.imag)
        return np.sqrt(s - k) * np.sqrt(s + k) / (np.sqrt(s - 1.0) * np.sqrt(s + 1.0))

    return g


class RectangleMap(ExteriorMap):
    """Exterior map of ``{|Re w - (beta+gamma)/2| <= (gamma-beta)/2, |Im w - y0| <= alpha/2}``."""

    family = "rectangle"

    def __init__(self, params, center_imag=0.0):
        self.rect = params
        self.center_imag = float(center_imag)
        c, k = params.c, params.k
        self.a1 = complex(c / 2)
        self.a0 = complex(params.center_real, self.center_imag)
        self.a_minus1 = complex(-c * (0.5 - k * k))
        self._g = _integrand(k)
        hw, top = params.half_width, 0.5j * params.alpha
        # prevertex -> (image, exponent of g there)
        self._anchors = ((1.0, hw, -0.5), (-1.0, -hw, -0.5), (k, hw + top, 0.5), (-k, -hw + top, 0.5))

    def F(self, zeta):
        """Upper half-plane map (centred rectangle), ``Im zeta >= 0``."""
        zeta = complex(zeta)
        p = self.rect
        if p.k <= 0.0:
            # k = 0: vertical segment, F = c sqrt(zeta^2 - 1)
            return p.c * np.sqrt(zeta - 1.0) * np.sqrt(zeta + 1.0)
        if p.k >= 1.0:
            return complex(p.c * zeta)
        # start from the nearest prevertex, where F is known exactly
        x0, w0, expo = min(self._anchors, key=lambda a: abs(zeta - a[0]))
        delta = zeta - x0
        if expo < 0 and abs(delta) < min(1e-8, 1e-3 * (1.0 - p.k)):
            # g = h(s) / sqrt(s - x0), h smooth there; two-term expansion
            h = math.sqrt((1.0 - p.k**2) / 2.0) * (1.0 if x0 > 0 else 1j)
            dlog = x0 / (1.0 - p.k**2) - 0.25 * x0
            return w0 + p.c * h * np.sqrt(delta) * (2.0 + (2.0 / 3.0) * dlog * delta)
        if expo > 0 and abs(delta) < 1e-12 * min(p.k, 1.0 - p.k):
            return complex(w0)
        others = [a[0] for a in self._anchors if a[0] != x0]
        path = integrate_split(self._g, x0, zeta, exp_a=expo, others=others, tol=_QUAD_TOL)
        return w0 + p.c * path

    def _evaluate(self, z):
        out = np.empty(z.shape, dtype=complex)
        shift = self.a0
        for idx, zi in enumerate(z):
            upper = zi.imag >= 0
            zz = zi if upper else zi.conjugate()
            val = self.F(0.5 * (zz + 1.0 / zz))
            out[idx] = (val if upper else val.conjugate()) + shift
        return out

    def params(self):
        p = self.rect
        return {"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, "c": p.c, "k": p.k, "center_imag": self.center_imag}


def map_rectangle(alpha, beta, gamma, center_imag=0.0):
    """Exterior map of the rectangle ``[beta, gamma] x [y0 - alpha/2, y0 + alpha/2]``."""
    return RectangleMap(solve_rectangle_params(alpha, beta, gamma), center_imag)
