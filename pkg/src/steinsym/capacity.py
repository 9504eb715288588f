"""Capacity functionals from map coefficients, with two independent oracles.

``logcap = |a1|`` and ``functional = |a1|^2 - Re(a1 a_minus1)``. For sets
symmetric about the real axis the functional is the half-plane capacity of
the part in the upper half-plane, which the walk-on-spheres estimator
measures directly. Greedy Leja points give a rough transfinite-diameter check
of ``logcap``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import geometry as geo
from .confmap import exterior_map, laurent_coefficients
from .errors import NonSymmetricSet
from .kernels import boundary_primitives, leja_indices, walk_on_spheres

METHODS = ("coefficients", "monte_carlo", "fekete")
_METHOD_ALIASES = {"coeff": "coefficients", "mc": "monte_carlo"}


@dataclass(frozen=True)
class CapacityReport:
    logcap: float
    functional: float
    hcap_valid: bool
    method: str
    error_estimate: float

    def to_dict(self):
        return asdict(self)


def logcap_from_map(fmap):
    return abs(fmap.a1)


def functional_from_map(fmap):
    """``|a1|^2 - Re(a1 a_minus1)``; equals hcap of the upper part for real-symmetric sets."""
    return abs(fmap.a1) ** 2 - (fmap.a1 * fmap.a_minus1).real


# ---------------------------------------------------------------------------
# walk-on-spheres


def _mc_geometry(s):
    pieces = [piece for p in geo.iter_parts(s) for piece in geo.boundary_pieces(p)]
    return boundary_primitives(pieces)


def _mc_run(segs, circs, x0, y, eps, n_walkers, seed, first, backend):
    heights = walk_on_spheres(segs, circs, y, eps, n_walkers, seed, x_start=x0, first=first, backend=backend)
    est = y * heights.mean()
    err = y * heights.std(ddof=1) / math.sqrt(n_walkers) if n_walkers > 1 else math.inf
    return est, err


def hcap_monte_carlo(s, y_start=None, n_walkers=10**6, eps=None, seed=0, backend=None):
    """Half-plane capacity of ``s`` (symmetric about R) by walk-on-spheres.

    Walkers start at ``x_c + i*y`` for ``y = y_start`` and ``2*y_start`` with
    disjoint random streams. The two estimates are extrapolated in ``1/y^2``.
    ``y_start`` defaults to 25 diameters and ``eps`` to 1e-4 diameters.
    Returns ``(estimate, standard_error)``.
    """
    s = geo.validate(s)
    if not geo.is_symmetric_real(s):
        raise NonSymmetricSet("half-plane capacity needs a set symmetric about the real axis")
    diam = geo.diameter(s)
    y1 = 25.0 * diam if y_start is None else float(y_start)
    eps = 1e-4 * diam if eps is None else float(eps)
    x_lo, x_hi, _, _ = geo.bounding_box(s)
    x0 = 0.5 * (x_lo + x_hi)
    segs, circs = _mc_geometry(s)
    est1, se1 = _mc_run(segs, circs, x0, y1, eps, n_walkers, seed, 0, backend)
    est2, se2 = _mc_run(segs, circs, x0, 2.0 * y1, eps, n_walkers, seed, n_walkers, backend)
    estimate = (4.0 * est2 - est1) / 3.0
    stderr = math.sqrt(16.0 * se2**2 + se1**2) / 3.0
    return float(estimate), float(stderr)


# ---------------------------------------------------------------------------
# Leja / Fekete


def _piece_candidates(piece, count):
    kind = piece[0]
    if kind == "seg":
        a, b = piece[1], piece[2]
        # cosine spacing clusters candidates at the ends, where equilibrium mass piles up
        t = 0.5 - 0.5 * np.cos(np.pi * np.arange(count + 1) / count)
        return a + t[:-1] * (b - a)
    c, r = piece[1], piece[2]
    return c + r * np.exp(2j * np.pi * np.arange(count) / count)


def leja_candidates(s, n_candidates=4000):
    """Candidate points on the parts' boundaries, skipping points interior to other parts."""
    parts = list(geo.iter_parts(s))
    pieces = [(i, piece) for i, p in enumerate(parts) for piece in geo.boundary_pieces(p)]
    lengths = np.array([abs(pc[2] - pc[1]) if pc[0] == "seg" else 2 * math.pi * pc[2] for _, pc in pieces])
    counts = np.maximum(8, np.round(n_candidates * lengths / lengths.sum())).astype(int)
    out = []
    for (i, piece), count in zip(pieces, counts):
        pts = _piece_candidates(piece, int(count))
        others = [q for j, q in enumerate(parts) if j != i and not geo.is_thin(q)]
        if others:
            pts = np.array([z for z in pts if not any(geo.interior_contains(q, z) for q in others)])
        if len(pts):
            out.append(pts)
    cand = np.concatenate(out)
    # drop duplicates created where pieces share endpoints
    key = np.round(cand.real, 12) + 1j * np.round(cand.imag, 12)
    _, idx = np.unique(key, return_index=True)
    return cand[np.sort(idx)]


def logcap_fekete(s, n_points=200, n_candidates=None, backend=None):
    """Transfinite-diameter estimate from ``n_points`` greedy Leja points.

    The raw discrete diameter ``(prod_{i<j} |z_i - z_j|)^(2/(n(n-1)))`` of ``n``
    well-spread points exceeds the capacity by about ``n^(1/(n-1))`` (the value
    for ``n`` equally spaced points on the unit circle), so that factor is
    divided out. Accuracy is a percent or so; this is a sanity oracle.
    """
    if n_points < 10:
        raise ValueError("n_points must be at least 10")
    s = geo.validate(s)
    n_candidates = 20 * n_points if n_candidates is None else int(n_candidates)
    cand = leja_candidates(s, n_candidates)
    pts = cand[leja_indices(cand, n_points, backend=backend)]
    diff = np.abs(pts[:, None] - pts[None, :])
    iu = np.triu_indices(n_points, 1)
    log_diam = 2.0 * np.sum(np.log(diff[iu])) / (n_points * (n_points - 1))
    return float(math.exp(log_diam - math.log(n_points) / (n_points - 1)))


# ---------------------------------------------------------------------------
# reports


def capacity_report(s, method="coefficients", seed=0, n_walkers=10**6, eps=None, n_points=200, backend=None):
    """Assemble a :class:`CapacityReport` with the requested method."""
    method = _METHOD_ALIASES.get(method, method)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    s = geo.validate(s)
    symmetric = geo.is_symmetric_real(s)
    if method == "coefficients":
        fmap = exterior_map(s)
        _, _, _, err = laurent_coefficients(fmap)
        return CapacityReport(logcap_from_map(fmap), functional_from_map(fmap), symmetric, method, err)
    if method == "monte_carlo":
        estimate, stderr = hcap_monte_carlo(s, n_walkers=n_walkers, eps=eps, seed=seed, backend=backend)
        logcap = logcap_from_map(exterior_map(s))
        return CapacityReport(logcap, estimate, True, method, stderr)
    logcap = logcap_fekete(s, n_points, backend=backend)
    functional = functional_from_map(exterior_map(s))
    return CapacityReport(logcap, functional, symmetric, method, 0.02 * logcap)
