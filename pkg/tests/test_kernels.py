import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinsym import _accel
from steinsym import geometry as geo
from steinsym.kernels import (
    boundary_primitives,
    leja_indices,
    polyline_self_intersects,
    walk_on_spheres,
    walker_states,
)

BACKENDS = ["numpy", "numba"] if _accel.HAVE_NUMBA else ["numpy"]


def segment_geometry(p, q):
    return boundary_primitives([("seg", complex(p), complex(q))])


def test_walker_states_are_counter_based():
    full = walker_states(3, 0, 100)
    assert np.array_equal(full[40:70], walker_states(3, 40, 30))
    assert not np.array_equal(full, walker_states(4, 0, 100))
    assert len(np.unique(full)) == 100


@pytest.mark.parametrize("backend", BACKENDS)
def test_batching_does_not_change_results(backend):
    segs, circs = segment_geometry(-1j, 1j)
    a = walk_on_spheres(segs, circs, 20.0, 1e-3, 3000, 9, backend=backend, batch=3000)
    b = walk_on_spheres(segs, circs, 20.0, 1e-3, 3000, 9, backend=backend, batch=128)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("backend", BACKENDS)
def test_walker_ranges_partition(backend):
    segs, circs = segment_geometry(-1j, 1j)
    whole = walk_on_spheres(segs, circs, 20.0, 1e-3, 2000, 5, backend=backend)
    head = walk_on_spheres(segs, circs, 20.0, 1e-3, 700, 5, first=0, backend=backend)
    tail = walk_on_spheres(segs, circs, 20.0, 1e-3, 1300, 5, first=700, backend=backend)
    assert np.array_equal(whole, np.concatenate([head, tail]))


@pytest.mark.parametrize("backend", BACKENDS)
def test_seeded_runs_are_bit_identical(backend):
    segs, circs = segment_geometry(-2j, 2j)
    a = walk_on_spheres(segs, circs, 50.0, 1e-3, 5000, 42, backend=backend)
    b = walk_on_spheres(segs, circs, 50.0, 1e-3, 5000, 42, backend=backend)
    assert a.tobytes() == b.tobytes()


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_backends_agree():
    segs, circs = boundary_primitives([("seg", -1 - 1j, 1 - 1j), ("circ", 0.5j, 0.7)])
    a = walk_on_spheres(segs, circs, 30.0, 1e-4, 4000, 1, backend="numpy")
    b = walk_on_spheres(segs, circs, 30.0, 1e-4, 4000, 1, backend="numba")
    # the paths use the same random numbers; only libm rounding can differ
    assert np.mean(np.abs(a - b) < 1e-6) > 0.99
    assert abs(a.mean() - b.mean()) < 1e-2


def test_horizontal_segment_absorbs_on_axis():
    segs, circs = segment_geometry(-2, 2)
    heights = walk_on_spheres(segs, circs, 10.0, 1e-4, 500, 0)
    assert np.all(heights == 0.0)


def test_heights_are_bounded_by_the_set():
    segs, circs = segment_geometry(-1j, 1j)
    heights = walk_on_spheres(segs, circs, 10.0, 1e-4, 2000, 0)
    assert np.all((heights >= 0) & (heights <= 1.0 + 1e-4))


@pytest.mark.parametrize("backend", BACKENDS)
def test_leja_on_circle(backend):
    cand = np.exp(2j * np.pi * np.arange(64) / 64)
    idx = leja_indices(cand, 8, backend=backend)
    assert len(set(idx.tolist())) == 8
    pts = cand[idx]
    # greedy Leja points on a circle: the second point is antipodal to the first
    assert abs(pts[0] + pts[1]) < 1e-12


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
@given(st.integers(0, 10_000))
def test_leja_backends_agree(seed):
    rng = np.random.default_rng(seed)
    cand = rng.normal(size=120) + 1j * rng.normal(size=120)
    assert np.array_equal(leja_indices(cand, 30, backend="numpy"), leja_indices(cand, 30, backend="numba"))


def test_leja_rejects_too_many_points():
    with pytest.raises(ValueError):
        leja_indices(np.arange(3, dtype=complex), 5)


@pytest.mark.parametrize("backend", BACKENDS)
def test_polyline_self_intersection(backend):
    square = np.array([0, 1, 1 + 1j, 1j])
    bowtie = np.array([0, 1 + 1j, 1, 1j])
    assert not polyline_self_intersects(square, backend=backend)
    assert polyline_self_intersects(bowtie, backend=backend)


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
@given(st.integers(0, 10_000), st.integers(4, 30))
def test_polyline_backends_agree(seed, n):
    pts = np.random.default_rng(seed).normal(size=(n, 2)) @ np.array([1, 1j])
    assert polyline_self_intersects(pts, backend="numpy") == polyline_self_intersects(pts, backend="numba")


def test_resolve_backend():
    assert _accel.resolve_backend("numpy") == "numpy"
    with pytest.raises(ValueError):
        _accel.resolve_backend("fortran")


@pytest.mark.parametrize("value, expected", [("numpy", "numpy"), ("NUMPY", "numpy"), ("bogus", "numpy")])
def test_environment_selects_backend(value, expected):
    code = "from steinsym import _accel; print(_accel.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env={"STEINSYM_BACKEND": value, "PATH": ""}, check=True)
    assert out.stdout.strip() == expected


def test_boundary_primitives_from_geometry():
    pieces = [piece for p in geo.iter_parts(geo.ConnectedUnion((geo.Disk(0, 1), geo.Segment(1, 3)))) for piece in geo.boundary_pieces(p)]
    segs, circs = boundary_primitives(pieces)
    assert segs.shape == (1, 4) and circs.shape == (1, 3)
