import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinsym import geometry as geo
from steinsym.confmap import map_slit_disk, normalize_to_sigma
from steinsym.errors import ContainmentViolated, InputError, SliceHypothesisViolated, ZeroMeasureSlice
from steinsym.inequality import (
    check_corollary1,
    check_corollary2,
    check_m_bound,
    check_polya_szego,
    check_schiffer_disks,
    check_theorem1,
    check_theorem2,
    corollary1_consequences,
    corollary2_bound,
    interior_probe_points,
    rectangle_extremal,
    run_corpus,
    schiffer_side,
    sigma_normalized,
    slice_hypothesis_holds,
)
from steinsym.scene import Scene, load_corpus

L_SHAPE = geo.Polygon((0, 2, 2 + 1j, 1 + 1j, 1 + 2j, 2j))
SQUARE = geo.Polygon((-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j))


# --- functional and Polya-Szego -----------------------------------------------------------


def test_functional_circle_example():
    rep = check_theorem1(geo.Circle(0, 1))
    assert (rep.lhs, rep.rhs) == (1.0, 0.0)
    assert rep.passed and rep.slack == 1.0


def test_functional_equality_for_symmetric_sets():
    for s in (geo.Disk(0, 1), SQUARE, geo.Segment(-2j, 2j)):
        rep = check_theorem1(s)
        assert abs(rep.slack) < 1e-12


def test_functional_l_shape_uses_sc_tolerance():
    rep = check_theorem1(L_SHAPE)
    assert rep.tol == 1e-5 and rep.passed and rep.slack > 0


@given(st.floats(0.2, 4.0), st.floats(0.2, 4.0), st.floats(-3, 3), st.floats(0, math.pi))
def test_functional_for_rotated_segments(length, width, shift, theta):
    seg = geo.Segment(complex(shift, width), complex(shift, width) + length * complex(math.cos(theta), math.sin(theta)))
    assert check_theorem1(seg).passed
    assert check_polya_szego(seg).passed


@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(-2, 2))
def test_functional_for_offset_rectangles(w, h, y0):
    rect = geo.Polygon((complex(0, y0), complex(w, y0), complex(w, y0 + h), complex(0, y0 + h)))
    t1 = check_theorem1(rect)
    assert t1.passed and t1.slack >= -1e-9
    assert check_polya_szego(rect).passed


@pytest.mark.parametrize("theta", [0.3, 1.0, 2.2])
def test_functional_for_rotated_l_shape(theta):
    s = geo.rotate(L_SHAPE, theta, about=1 + 1j)
    assert check_theorem1(s).passed
    assert check_polya_szego(s).passed


def test_polya_szego_slit_disk():
    d = complex(math.cos(math.pi / 6), math.sin(math.pi / 6))
    s = geo.ConnectedUnion((geo.Disk(0, 0.5), geo.Segment(-1.5 * d, 1.5 * d)))
    rep = check_polya_szego(s)
    assert rep.passed and rep.slack > 0


# --- comparison with an inner continuum ----------------------------------------------------------------------


def test_inner_comparison_inner_rectangle():
    inner = geo.Polygon((-0.8 - 0.5j, 0.6 - 0.5j, 0.6 + 0.5j, -0.8 + 0.5j))
    rep = check_theorem2(SQUARE, inner)
    assert rep.passed and rep.slack > 0


def test_inner_comparison_requires_containment():
    with pytest.raises(ContainmentViolated):
        check_theorem2(SQUARE, geo.Disk(0, 1.5))


# --- Schiffer ---------------------------------------------------------------------


def test_schiffer_reference_values():
    rep = check_schiffer_disks(2.0, 1.0, 0.5)
    assert rep.lhs == pytest.approx(math.log(0.75), abs=1e-15)
    assert rep.rhs == pytest.approx(math.log(15 / 16), abs=1e-15)
    assert round(rep.lhs, 4) == -0.2877 and round(rep.rhs, 4) == -0.0645


def test_schiffer_side_closed_form():
    v, rho = 3.0, 1.2
    assert schiffer_side(v, rho) == pytest.approx(math.log(1 - rho**2 / v**2), abs=1e-14)


@given(st.floats(0.05, 0.95), st.floats(0.05, 1.0), st.floats(1.01, 20.0))
def test_schiffer_monotone(f1, f2, v):
    rho1 = f1 * v
    rho2 = f2 * rho1
    assert check_schiffer_disks(v, rho1, rho2).passed


def test_schiffer_equal_radii_is_equality():
    assert check_schiffer_disks(2.0, 1.0, 1.0).slack == 0.0


@pytest.mark.parametrize("args", [(1.0, 1.0, 0.5), (2.0, 0.5, 1.0), (2.0, 1.0, 0.0)])
def test_schiffer_rejects_bad_radii(args):
    with pytest.raises(InputError):
        check_schiffer_disks(*args)


# --- line measure and inradius --------------------------------------------------------------------


def test_line_inradius_joukowski():
    rep = check_corollary1(geo.Segment(-2, 2), 0.0, 0.0)
    assert rep.lhs == 2.0 and rep.rhs == 2.0


@pytest.mark.parametrize("lam", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("phi", [0.0, math.pi / 4, math.pi / 2])
def test_line_inradius_slit_disk_equality(lam, phi):
    R = 1 / lam
    m = 2 * R * (lam + math.sqrt(lam * lam - 1))
    d = complex(math.cos(phi), math.sin(phi))
    s = geo.ConnectedUnion((geo.Disk(0, R), geo.Segment(-m / 2 * d, m / 2 * d)))
    rep = check_corollary1(s, 0.0, phi)
    assert abs(rep.lhs - rep.rhs) < 1e-6
    assert rep.rhs == pytest.approx(2 - 1 / lam**2, abs=1e-12)


def test_line_inradius_with_sigma_map():
    f = map_slit_disk(0.0, 0.0, 0.5, 2.5)
    g, scale = normalize_to_sigma(f)
    s = geo.affine(geo.ConnectedUnion((geo.Disk(0, 0.5), geo.Segment(-1.25, 1.25))), scale)
    rep = check_corollary1(s, 0.0, 0.0, fmap=g)
    assert abs(rep.slack) < 1e-9
    with pytest.raises(InputError):
        check_corollary1(s, 0.0, 0.0, fmap=f)


def test_line_inradius_strict_for_square():
    rep = check_corollary1(SQUARE, 0.0, 0.0)
    assert rep.passed and rep.slack > 0.01


def test_line_inradius_errors():
    with pytest.raises(ZeroMeasureSlice):
        check_corollary1(geo.Segment(-2, 2), 0.0, math.pi / 2)
    with pytest.raises(InputError):
        check_corollary1(SQUARE, 5.0, 0.0)


def test_line_inradius_consequences():
    reports = corollary1_consequences(geo.Segment(-2, 2), 0.0)
    assert all(r.passed for r in reports)
    assert reports[0].lhs == pytest.approx(4.0)


def test_sigma_normalized_has_unit_capacity():
    scaled, w0, a = sigma_normalized(SQUARE, 0.5)
    assert w0 == pytest.approx(0.5 / 1.1803405990160964)
    assert abs(a) < 1e-12
    assert geo.diameter(scaled) == pytest.approx(2 * math.sqrt(2) / 1.1803405990160964)


# --- m bound -----------------------------------------------------------------------


@pytest.mark.parametrize("scene", load_corpus(), ids=lambda s: s.name)
def test_m_bound_on_corpus(scene):
    rep = check_m_bound(scene.set, n_phi=64)
    assert rep.rhs <= 4.0 + 1e-9


def test_probe_points_lie_in_set():
    for w in interior_probe_points(L_SHAPE):
        assert geo.contains(L_SHAPE, w)


# --- slice hypothesis bound ---------------------------------------------------------------------


@pytest.mark.parametrize("k", [0.05, 0.3, 1 / math.sqrt(2), 0.95])
def test_slice_bound_rectangle_extremal(k):
    s, alpha, beta, gamma = rectangle_extremal(k)
    rep = check_corollary2(s, alpha, beta, gamma)
    assert abs(rep.slack) <= 1e-10


def test_slice_bound_bound_formula():
    bound, p = corollary2_bound(2.0, -1.0, 1.0)
    assert bound == pytest.approx(1 - p.c**2 / 4)


def test_slice_bound_larger_set():
    # the square contains the hypothesis rectangle [-0.5, 0.5] x [-1, 1]
    rep = check_corollary2(SQUARE, 2.0, -0.5, 0.5)
    assert rep.passed and rep.slack > 0


def test_slice_bound_hypothesis_violation():
    assert not slice_hypothesis_holds(L_SHAPE, 2.0, 0.0, 2.0)
    with pytest.raises(SliceHypothesisViolated):
        check_corollary2(L_SHAPE, 2.0, 0.0, 2.0)


# --- corpus runs ------------------------------------------------------------------------


def test_run_corpus_passes():
    reports = run_corpus(load_corpus())
    assert len(reports) == 26
    assert all(r.passed for r in reports)


def test_run_corpus_empty():
    assert run_corpus([]) == []


def test_run_corpus_records_failures():
    bad = Scene("split", geo.ConnectedUnion((geo.Disk(0, 1), geo.Disk(5, 1))))
    reports = run_corpus([bad, Scene("disk", geo.Disk(0, 1))])
    assert [r.passed for r in reports] == [False, False, True, True]
    assert "DisconnectedUnion" in reports[0].error
    assert math.isnan(reports[0].slack)


def test_report_dict():
    d = check_theorem1(geo.Disk(0, 1)).to_dict()
    assert d["pass"] is True
    assert set(d) >= {"name", "lhs", "rhs", "slack", "tol", "inputs_digest"}


def test_reports_are_deterministic():
    a = [r.to_dict() for r in run_corpus(load_corpus())]
    b = [r.to_dict() for r in run_corpus(load_corpus())]
    assert a == b
    assert np.all([x["slack"] == y["slack"] for x, y in zip(a, b)])
