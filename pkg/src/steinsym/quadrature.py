"""Adaptive Gauss-Legendre panels and Gauss-Jacobi endpoint rules.

All integrators work along straight segments of the complex plane, so the
same code serves real integrals and contour pieces of conformal maps.
"""

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

_ORDER = 16


@lru_cache(maxsize=None)
def legendre_rule(n=_ORDER):
    x, w = leggauss(n)
    return x, w


@lru_cache(maxsize=None)
def jacobi_rule(n, alpha, beta):
    """Nodes/weights for weight ``(1 - x)**alpha * (1 + x)**beta`` on [-1, 1]."""
    x, w = roots_jacobi(n, alpha, beta)
    return x, w


def _panel(f, a, b, x, w):
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    return half * np.dot(w, f(mid + half * x))


def integrate(f, a, b, tol=1e-13, order=_ORDER, max_depth=50, max_panels=4000):
    """Integrate ``f`` along the segment from ``a`` to ``b``.

    ``f`` must accept an array of (possibly complex) points. Panels are bisected
    until the one-panel and two-half-panel estimates agree to ``tol`` scaled by
    the panel's share of the path or by the panel's own value, or until
    ``max_depth`` bisections. Once ``max_panels`` panels have been split the
    remaining ones are accepted as they are, which bounds the cost when
    rounding noise in ``f`` makes the tolerance unreachable. Algebraic
    endpoint singularities belong in :func:`integrate_split`. Returns
    ``(value, error_estimate)``.
    """
    if a == b:
        return 0.0, 0.0
    x, w = legendre_rule(order)
    length = abs(b - a)
    stack = [(a, b, _panel(f, a, b, x, w), 0)]
    total = 0.0
    err = 0.0
    splits = 0
    while stack:
        lo, hi, est, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid, x, w)
        right = _panel(f, mid, hi, x, w)
        diff = abs(left + right - est)
        if (
            diff <= tol * max(abs(hi - lo) / length, abs(left + right))
            or depth >= max_depth
            or splits >= max_panels
        ):
            total += left + right
            err += diff
        else:
            splits += 1
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return total, err


def integrate_singular_start(f, a, b, exponent, n=24):
    """Integrate ``f`` from ``a`` to ``b`` when ``f ~ |s - a|**exponent`` near ``a``.

    ``f`` is evaluated at interior Gauss-Jacobi nodes only and divided by the
    weight there, so the algebraic singularity is absorbed exactly.
    """
    if exponent == 0.0:
        return integrate(f, a, b)[0]
    x, w = jacobi_rule(n, 0.0, exponent)
    half = 0.5 * (b - a)
    s = a + half * (x + 1.0)
    dist = np.abs(s - a)
    # |half|**(1+exponent) * sum w f / dist**exponent, with direction factor half/|half|
    scale = half * abs(half) ** exponent
    return scale * np.dot(w, f(s) / dist**exponent)


def integrate_singular_end(f, a, b, exponent, n=24):
    """As :func:`integrate_singular_start` with the singularity at ``b``."""
    if exponent == 0.0:
        return integrate(f, a, b)[0]
    x, w = jacobi_rule(n, exponent, 0.0)
    half = 0.5 * (b - a)
    s = a + half * (x + 1.0)
    dist = np.abs(b - s)
    scale = half * abs(half) ** exponent
    return scale * np.dot(w, f(s) / dist**exponent)


def integrate_split(f, a, b, exp_a=0.0, exp_b=0.0, others=(), tol=1e-13, n=24):
    """Integrate along ``[a, b]`` with algebraic singularities at the ends.

    Near an end with nonzero exponent a Gauss-Jacobi panel is used whose length
    is limited to half the distance to the nearest point in ``others`` (other
    singularities off the path); the middle goes to adaptive Gauss-Legendre.
    """
    length = abs(b - a)
    if length == 0.0:
        return 0.0
    direction = (b - a) / length

    def reach(p):
        if not len(others):
            return 0.5 * length
        dist = min(abs(p - o) for o in others)
        return min(0.5 * length, 0.5 * dist)

    lo, hi = a, b
    total = 0.0
    if exp_a != 0.0:
        lo = a + direction * reach(a)
        total += integrate_singular_start(f, a, lo, exp_a, n)
    if exp_b != 0.0:
        hi = b - direction * reach(b)
        total += integrate_singular_end(f, hi, b, exp_b, n)
    if abs(hi - lo) > 0 and ((hi - lo) / direction).real > 0:
        total += integrate(f, lo, hi, tol=tol)[0]
    return total
