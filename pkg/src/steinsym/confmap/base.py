"""Exterior maps f: {|z| > 1} -> complement of a continuum, closed-form families."""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import DegeneratePrimitive, InvalidSlitExtent


def joukowski(z):
    return z + 1.0 / z


def joukowski_inverse(w):
    """Branch of h^{-1} with |h^{-1}(w)| > 1 off [-2, 2]."""
    w = np.asarray(w, dtype=complex)
    return 0.5 * (w + np.sqrt(w - 2.0) * np.sqrt(w + 2.0))


class ExteriorMap:
    """``f(z) = a1 z + a0 + a_minus1 / z + ...`` on ``|z| > 1``.

    Subclasses provide ``_evaluate`` (vectorized) and the three cached
    coefficients; ``functional`` is ``|a1|^2 - Re(a1 a_minus1)``.
    """

    family = "abstract"
    a1: complex
    a0: complex
    a_minus1: complex

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self._evaluate(np.atleast_1d(z))
        return out.reshape(z.shape) if z.shape else complex(out[0])

    def _evaluate(self, z):
        raise NotImplementedError

    @property
    def functional(self):
        return abs(self.a1) ** 2 - (self.a1 * self.a_minus1).real

    @property
    def logcap(self):
        return abs(self.a1)

    def params(self):
        return {}

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"


class DiskMap(ExteriorMap):
    family = "disk"

    def __init__(self, center, radius):
        self.center = complex(center)
        self.radius = float(radius)
        self.a1 = complex(self.radius)
        self.a0 = self.center
        self.a_minus1 = 0j

    def _evaluate(self, z):
        return self.center + self.radius * z

    def params(self):
        return {"center": self.center, "radius": self.radius}


class SegmentMap(ExteriorMap):
    family = "segment"

    def __init__(self, p, q):
        self.p = complex(p)
        self.q = complex(q)
        length = abs(self.q - self.p)
        direction = (self.q - self.p) / length
        self.a1 = direction * length / 4
        self.a0 = 0.5 * (self.p + self.q)
        self.a_minus1 = self.a1

    def _evaluate(self, z):
        return self.a0 + self.a1 * joukowski(z)

    def params(self):
        return {"p": self.p, "q": self.q}


class SlitDiskMap(ExteriorMap):
    """Disk of radius ``R`` about ``w0`` with a diametral slit of total length ``m``.

    ``f(z) = w0 + e^{i phi} R h^{-1}(lam h(z))`` with ``lam = (m^2 + 4R^2)/(4 R m)``.
    """

    family = "slit_disk"

    def __init__(self, w0, phi, R, lam):
        self.w0 = complex(w0)
        self.phi = float(phi)
        self.R = float(R)
        self.lam = float(lam)
        rot = cmath.exp(1j * self.phi)
        self.a1 = rot * self.R * self.lam
        self.a0 = self.w0
        self.a_minus1 = rot * self.R * (self.lam - 1.0 / self.lam)

    @property
    def slit_extent(self):
        # x0 + 1/x0 = 2 lam, x0 >= 1
        x0 = self.lam + math.sqrt(self.lam**2 - 1.0)
        return 2.0 * self.R * x0

    def _evaluate(self, z):
        return self.w0 + cmath.exp(1j * self.phi) * self.R * joukowski_inverse(self.lam * joukowski(z))

    def params(self):
        return {"w0": self.w0, "phi": self.phi, "R": self.R, "lambda": self.lam, "m": self.slit_extent}


class Reparametrized(ExteriorMap):
    """``g(z) = scale * f(rot * z) + shift`` for ``|rot| = 1``, ``scale > 0``."""

    def __init__(self, base, rot=1.0, scale=1.0, shift=0.0):
        self.base = base
        self.rot = complex(rot)
        self.scale = complex(scale)
        self.shift = complex(shift)
        self.family = base.family
        self.a1 = self.scale * base.a1 * self.rot
        self.a0 = self.scale * base.a0 + self.shift
        self.a_minus1 = self.scale * base.a_minus1 / self.rot

    def _evaluate(self, z):
        return self.scale * self.base._evaluate(self.rot * z) + self.shift

    def params(self):
        return {"base": self.base, "rot": self.rot, "scale": self.scale, "shift": self.shift}


def map_disk(center, radius):
    if not radius > 0:
        raise DegeneratePrimitive(f"radius must be positive, got {radius}")
    return DiskMap(center, radius)


def map_segment(p, q):
    if abs(complex(q) - complex(p)) == 0.0:
        raise DegeneratePrimitive("segment endpoints coincide")
    return SegmentMap(p, q)


def slit_lambda(R, m):
    return (m * m + 4.0 * R * R) / (4.0 * R * m)


def map_slit_disk(w0, phi, R, m):
    """Exterior map of the disk ``|w - w0| <= R`` plus the slit of total extent ``m``
    along ``e^{i phi}`` through ``w0``."""
    if not R > 0:
        raise DegeneratePrimitive("slit disk radius must be positive")
    if m < 2.0 * R * (1.0 - 1e-15):
        raise InvalidSlitExtent(f"slit extent {m} is shorter than the diameter {2 * R}")
    return SlitDiskMap(w0, phi, R, max(slit_lambda(R, m), 1.0))


def rotate_argument(f, tau):
    """``z -> f(e^{i tau} z)``; leaves |a1| and a1*a_minus1 unchanged."""
    return Reparametrized(f, rot=cmath.exp(1j * tau))


def normalize_to_sigma(f):
    """Rescale and rotate so that ``a1 = 1`` (class Sigma normalization).

    Returns ``(g, scale)``; ``g`` maps onto the set scaled by ``scale = 1/|a1|``.
    """
    scale = 1.0 / abs(f.a1)
    rot = abs(f.a1) / f.a1
    return Reparametrized(f, rot=rot, scale=scale), scale
