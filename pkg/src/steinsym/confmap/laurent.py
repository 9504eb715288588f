"""Laurent coefficients by contour sampling, univalence spot check, JSON dump."""

from __future__ import annotations

import numpy as np

from ..kernels import polyline_self_intersects

DEFAULT_RHO = 1.5
DEFAULT_SAMPLES = 256


def _coefficients_at(fmap, rho, n_samples):
    z = rho * np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    spectrum = np.fft.fft(fmap(z)) / n_samples
    return spectrum[1] / rho, spectrum[0], spectrum[-1] * rho


def laurent_coefficients(fmap, rho=DEFAULT_RHO, n_samples=DEFAULT_SAMPLES):
    """``(a1, a0, a_minus1, error_estimate)`` of ``fmap`` from samples on ``|z| = rho``.

    The estimate is the largest change of the three coefficients when the
    extraction is repeated on ``|z| = 2 rho - 1``, plus a rounding floor.
    """
    if not rho > 1.0:
        raise ValueError("rho must exceed 1")
    if n_samples < 8 or n_samples & (n_samples - 1):
        raise ValueError("n_samples must be a power of two >= 8")
    first = _coefficients_at(fmap, rho, n_samples)
    second = _coefficients_at(fmap, 2.0 * rho - 1.0, n_samples)
    scale = max(abs(first[0]), abs(first[1]), abs(first[2]), 1e-300)
    err = max(abs(x - y) for x, y in zip(first, second)) + 64 * np.finfo(float).eps * scale
    return complex(first[0]), complex(first[1]), complex(first[2]), float(err)


def boundary_image(fmap, n_points=2048, radius=1.0 + 1e-6):
    return fmap(radius * np.exp(2j * np.pi * np.arange(n_points) / n_points))


def is_univalent_on_circle(fmap, n_points=2048, radius=1.0 + 1e-6, backend=None):
    """True when the image polyline of ``|z| = radius`` has no proper self-crossing."""
    return not polyline_self_intersects(boundary_image(fmap, n_points, radius), backend=backend)


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _jsonable(value):
    if isinstance(value, complex):
        return _pair(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.complexfloating):
        return _pair(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if hasattr(value, "params") and hasattr(value, "family"):
        return {"family": value.family, "params": _jsonable(value.params())}
    return value


def map_to_dict(fmap, rho=DEFAULT_RHO, n_samples=DEFAULT_SAMPLES):
    """Family tag, parameters, closed-form and sampled coefficients with error estimates."""
    b1, b0, bm1, err = laurent_coefficients(fmap, rho, n_samples)
    return {
        "family": fmap.family,
        "params": _jsonable(fmap.params()),
        "a1": _pair(fmap.a1),
        "a0": _pair(fmap.a0),
        "a_minus1": _pair(fmap.a_minus1),
        "logcap": abs(fmap.a1),
        "functional": fmap.functional,
        "sampled": {
            "rho": rho,
            "n_samples": n_samples,
            "a1": _pair(b1),
            "a0": _pair(b0),
            "a_minus1": _pair(bm1),
            "error_estimate": err,
            "deviation": max(abs(b1 - fmap.a1), abs(b0 - fmap.a0), abs(bm1 - fmap.a_minus1)),
        },
    }
