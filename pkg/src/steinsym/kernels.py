"""Hot loops: walk-on-spheres, greedy Leja selection, polyline self-intersection.

Each kernel has a numba version (compiled loops) and a numpy version
(vectorized). ``STEINSYM_BACKEND`` or the ``backend`` argument selects one.

Random numbers come from a counter-based splitmix64 stream per walker, so a
walker's path depends only on ``(seed, walker index)``. Results therefore do
not depend on how walkers are batched.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import njit, resolve_backend

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TO_UNIT = 1.0 / 9007199254740992.0  # 2**-53
_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# splitmix64


@njit
def _mix_nb(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _mix_np(z):
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def walker_states(seed, first, count):
    """Initial splitmix64 states of walkers ``first .. first + count - 1``."""
    key = _mix_np(np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF)], dtype=np.uint64))[0]
    idx = np.arange(first, first + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix_np(key + idx * _GAMMA)


# ---------------------------------------------------------------------------
# distance to a set made of segments and circles


def boundary_primitives(pieces):
    """Split ``("seg", a, b)`` / ``("circ", c, r)`` pieces into two float arrays."""
    segs = [(a.real, a.imag, b.real, b.imag) for kind, a, b in pieces if kind == "seg"]
    circs = [(c.real, c.imag, r) for kind, c, r in pieces if kind != "seg"]
    return (
        np.array(segs, dtype=float).reshape(-1, 4),
        np.array(circs, dtype=float).reshape(-1, 3),
    )


@njit
def _dist_nb(x, y, segs, circs):
    best = np.inf
    for i in range(segs.shape[0]):
        ax, ay, bx, by = segs[i, 0], segs[i, 1], segs[i, 2], segs[i, 3]
        dx, dy = bx - ax, by - ay
        den = dx * dx + dy * dy
        t = ((x - ax) * dx + (y - ay) * dy) / den
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        px, py = ax + t * dx - x, ay + t * dy - y
        d = math.sqrt(px * px + py * py)
        if d < best:
            best = d
    for i in range(circs.shape[0]):
        ex, ey = x - circs[i, 0], y - circs[i, 1]
        d = abs(math.sqrt(ex * ex + ey * ey) - circs[i, 2])
        if d < best:
            best = d
    return best


def _dist_np(x, y, segs, circs):
    best = np.full(x.shape, np.inf)
    for ax, ay, bx, by in segs:
        dx, dy = bx - ax, by - ay
        t = np.clip(((x - ax) * dx + (y - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0)
        np.minimum(best, np.hypot(ax + t * dx - x, ay + t * dy - y), out=best)
    for cx, cy, r in circs:
        np.minimum(best, np.abs(np.hypot(x - cx, y - cy) - r), out=best)
    return best


# ---------------------------------------------------------------------------
# walk-on-spheres in the upper half-plane


@njit
def _wos_nb(states, x0, y0, eps, segs, circs, max_steps):
    n = states.shape[0]
    out = np.empty(n)
    for w in range(n):
        s = states[w]
        x, y = x0, y0
        value = 0.0
        for _ in range(max_steps):
            if y < eps:
                break
            d_set = _dist_nb(x, y, segs, circs)
            if d_set < eps:
                value = y
                break
            r = d_set if d_set < y else y
            s = s + np.uint64(0x9E3779B97F4A7C15)
            u = np.float64(_mix_nb(s) >> np.uint64(11)) * 1.1102230246251565e-16
            theta = 6.283185307179586 * u
            x += r * math.cos(theta)
            y += r * math.sin(theta)
        out[w] = value
    return out


def _wos_np(states, x0, y0, eps, segs, circs, max_steps):
    n = states.shape[0]
    out = np.zeros(n)
    x = np.full(n, x0)
    y = np.full(n, y0)
    s = states.copy()
    active = np.arange(n)
    for _ in range(max_steps):
        if active.size == 0:
            break
        xa, ya = x[active], y[active]
        d_set = _dist_np(xa, ya, segs, circs)
        hit_axis = ya < eps
        hit_set = ~hit_axis & (d_set < eps)
        out[active[hit_set]] = ya[hit_set]
        keep = ~(hit_set | hit_axis)
        active, xa, ya, d_set = active[keep], xa[keep], ya[keep], d_set[keep]
        r = np.minimum(d_set, ya)
        with np.errstate(over="ignore"):
            s[active] += _GAMMA
        u = (_mix_np(s[active]) >> np.uint64(11)).astype(np.float64) * _TO_UNIT
        theta = _TWO_PI * u
        x[active] = xa + r * np.cos(theta)
        y[active] = ya + r * np.sin(theta)
    return out


def walk_on_spheres(segs, circs, y_start, eps, n_walkers, seed, x_start=0.0, first=0, backend=None, batch=1 << 16, max_steps=100_000):
    """Imaginary part at absorption for each walker started at ``x_start + i*y_start``.

    A walker stops within ``eps`` of the real axis (recording 0) or of the set
    (recording its height); the axis is tested first. Returns an array of length ``n_walkers``.
    """
    backend = resolve_backend(backend)
    kernel = _wos_nb if backend == "numba" else _wos_np
    out = np.empty(n_walkers)
    for lo in range(0, n_walkers, batch):
        cnt = min(batch, n_walkers - lo)
        states = walker_states(seed, first + lo, cnt)
        out[lo : lo + cnt] = kernel(states, float(x_start), float(y_start), float(eps), segs, circs, max_steps)
    return out


# ---------------------------------------------------------------------------
# greedy Leja points


@njit
def _leja_nb(cand, n, first):
    m = cand.shape[0]
    xs = cand.real.copy()
    ys = cand.imag.copy()
    acc = np.zeros(m)
    chosen = np.empty(n, dtype=np.int64)
    chosen[0] = first
    acc[first] = -np.inf
    for j in range(1, n):
        lx = xs[chosen[j - 1]]
        ly = ys[chosen[j - 1]]
        best = -np.inf
        arg = -1
        for i in range(m):
            dx = xs[i] - lx
            dy = ys[i] - ly
            # half log of the squared distance; -inf for coincident points
            acc[i] += 0.5 * math.log(dx * dx + dy * dy) if dx != 0.0 or dy != 0.0 else -np.inf
            if acc[i] > best:
                best = acc[i]
                arg = i
        chosen[j] = arg
        acc[arg] = -np.inf
    return chosen


def _leja_np(cand, n, first):
    acc = np.zeros(cand.shape[0])
    chosen = [first]
    acc[first] = -np.inf
    for _ in range(1, n):
        with np.errstate(divide="ignore"):
            acc += np.log(np.abs(cand - cand[chosen[-1]]))
        nxt = int(np.argmax(acc))
        chosen.append(nxt)
        acc[nxt] = -np.inf
    return np.array(chosen, dtype=np.int64)


def leja_indices(candidates, n, backend=None):
    """Indices of ``n`` greedy Leja points among ``candidates`` (first: largest modulus)."""
    cand = np.ascontiguousarray(candidates, dtype=complex)
    if n > cand.shape[0]:
        raise ValueError("more Leja points requested than candidates")
    backend = resolve_backend(backend)
    first = int(np.argmax(np.abs(cand)))
    return (_leja_nb if backend == "numba" else _leja_np)(cand, int(n), first)


# ---------------------------------------------------------------------------
# closed polyline self-intersection


@njit
def _orient_nb(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


@njit
def _polyline_crossing_nb(x, y):
    n = x.shape[0]
    for i in range(n):
        i2 = (i + 1) % n
        for j in range(i + 2, n):
            j2 = (j + 1) % n
            if j2 == i:
                continue
            d1 = _orient_nb(x[i], y[i], x[i2], y[i2], x[j], y[j])
            d2 = _orient_nb(x[i], y[i], x[i2], y[i2], x[j2], y[j2])
            d3 = _orient_nb(x[j], y[j], x[j2], y[j2], x[i], y[i])
            d4 = _orient_nb(x[j], y[j], x[j2], y[j2], x[i2], y[i2])
            if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
                return True
    return False


def _polyline_crossing_np(x, y):
    n = x.shape[0]
    x2, y2 = np.roll(x, -1), np.roll(y, -1)
    for i in range(n - 2):
        j = np.arange(i + 2, n)
        if i == 0:
            j = j[j != n - 1]
        if j.size == 0:
            continue
        d1 = (x2[i] - x[i]) * (y[j] - y[i]) - (y2[i] - y[i]) * (x[j] - x[i])
        d2 = (x2[i] - x[i]) * (y2[j] - y[i]) - (y2[i] - y[i]) * (x2[j] - x[i])
        d3 = (x2[j] - x[j]) * (y[i] - y[j]) - (y2[j] - y[j]) * (x[i] - x[j])
        d4 = (x2[j] - x[j]) * (y2[i] - y[j]) - (y2[j] - y[j]) * (x2[i] - x[j])
        strict = (d1 != 0) & (d2 != 0) & (d3 != 0) & (d4 != 0)
        if np.any(strict & ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0))):
            return True
    return False


def polyline_self_intersects(points, backend=None):
    """True if two non-adjacent edges of the closed polyline cross properly."""
    pts = np.asarray(points, dtype=complex)
    x = np.ascontiguousarray(pts.real)
    y = np.ascontiguousarray(pts.imag)
    backend = resolve_backend(backend)
    return bool((_polyline_crossing_nb if backend == "numba" else _polyline_crossing_np)(x, y))
