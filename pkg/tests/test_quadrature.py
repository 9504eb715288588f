import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinsym.quadrature import integrate, integrate_singular_end, integrate_singular_start, integrate_split


def test_smooth_integral():
    value, err = integrate(np.exp, 0.0, 1.0)
    assert value == pytest.approx(math.e - 1, abs=1e-14)
    assert err < 1e-12


def test_complex_path():
    # int over the straight path 0 -> 1+i of z^2 dz
    value, _ = integrate(lambda z: z * z, 0, 1 + 1j)
    assert value == pytest.approx((1 + 1j) ** 3 / 3, abs=1e-14)


@given(st.floats(-0.9, 2.0))
def test_start_singularity(expo):
    val = integrate_singular_start(lambda x: x**expo, 0.0, 1.0, expo)
    assert val == pytest.approx(1.0 / (expo + 1.0), rel=1e-12)


def test_end_singularity():
    val = integrate_singular_end(lambda x: (1 - x) ** -0.5, 0.0, 1.0, -0.5)
    assert val == pytest.approx(2.0, abs=1e-13)


def test_split_with_both_ends_singular():
    # int_0^1 x^-1/2 (1-x)^-1/2 dx = pi
    val = integrate_split(lambda x: (x * (1 - x)) ** -0.5, 0.0, 1.0, exp_a=-0.5, exp_b=-0.5)
    assert val == pytest.approx(math.pi, abs=1e-13)


def test_nearby_singularity_is_respected():
    def f(x):
        return np.abs(x - 0.5) ** 0.5 + 1.0

    exact = 2 * (2 / 3) * 0.5**1.5 + 1.0
    assert integrate_split(f, 0.0, 1.0, others=[0.5]) == pytest.approx(exact, abs=1e-6)
