"""Test-function family: pointwise values, derivative, linear statistics."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import mpmath as mp

from gapprobe.testfn import (
    Configuration,
    GaussianBump,
    TestFunction,
    eval_du,
    eval_u,
    linear_statistic,
    square_field_1d,
)

mp.mp.dps = 30


class TestEvalU:
    def test_zero_at_origin(self):
        assert eval_u(TestFunction(1.0), 0.0) == 0.0

    def test_value_at_one(self):
        # direct arbitrary-precision evaluation of x e^{-x^2/2}
        expected = float(mp.mpf(1) * mp.e ** mp.mpf("-0.5"))
        assert eval_u(TestFunction(1.0), 1.0) == pytest.approx(expected, rel=1e-15)

    def test_value_negative_argument(self):
        expected = float(-2 * mp.e ** mp.mpf("-0.5"))
        assert eval_u(TestFunction(2.0), -2.0) == pytest.approx(expected, rel=1e-15)

    def test_oddness_on_grid(self):
        rng = np.random.default_rng(7)
        sigmas = rng.uniform(0.1, 10.0, 1000)
        xs = rng.uniform(-50.0, 50.0, 1000)
        for s, x in zip(sigmas, xs):
            f = TestFunction(s)
            assert eval_u(f, -x) == -eval_u(f, x)

    @given(st.floats(0.05, 50.0), st.floats(-1e6, 1e6))
    @settings(max_examples=300, deadline=None)
    def test_oddness_exact(self, sigma, x):
        f = TestFunction(sigma)
        assert eval_u(f, -x) == -eval_u(f, x)

    @given(st.floats(0.05, 50.0), st.floats(-30.0, 30.0))
    @settings(max_examples=300, deadline=None)
    def test_self_similar_scaling(self, sigma, y):
        f = TestFunction(sigma)
        unit = TestFunction(1.0)
        assert eval_u(f, sigma * y) == pytest.approx(sigma * eval_u(unit, y),
                                                     rel=1e-13, abs=1e-300)

    def test_unique_positive_maximizer_at_sigma(self):
        for s in (0.5, 1.0, 3.0):
            f = TestFunction(s)
            xs = np.linspace(0.01, 12 * s, 4001)
            vals = eval_u(f, xs)
            assert abs(xs[np.argmax(vals)] - s) < 0.01 * s

    def test_huge_argument_no_nan(self):
        f = TestFunction(1.0)
        assert eval_u(f, 1e300) == 0.0
        assert eval_du(f, 1e300) == 0.0

    def test_sigma_validation(self):
        with pytest.raises(ValueError):
            TestFunction(0.0)
        with pytest.raises(ValueError):
            TestFunction(-1.0)


class TestEvalDu:
    def test_derivative_at_origin(self):
        assert eval_du(TestFunction(1.0), 0.0) == 1.0

    def test_critical_point_at_sigma(self):
        assert eval_du(TestFunction(1.0), 1.0) == 0.0

    def test_value_at_two(self):
        expected = float(mp.e ** mp.mpf(-2) * (1 - 4))
        got = eval_du(TestFunction(1.0), 2.0)
        assert got == pytest.approx(expected, rel=1e-14)
        # finite-difference oracle
        h = 1e-6
        f = TestFunction(1.0)
        fd = (eval_u(f, 2.0 + h) - eval_u(f, 2.0 - h)) / (2 * h)
        assert got == pytest.approx(fd, abs=1e-8)

    def test_matches_central_difference_on_grid(self):
        h = 1e-6
        for s in (0.5, 1.0, 2.0, 5.0):
            f = TestFunction(s)
            xs = np.linspace(-10 * s, 10 * s, 81)
            fd = (eval_u(f, xs + h) - eval_u(f, xs - h)) / (2 * h)
            an = eval_du(f, xs)
            assert np.all(np.abs(an - fd) <= 1e-7 * (1.0 + np.abs(an)))


class TestSquareField1d:
    def test_unit_at_origin(self):
        f = TestFunction(1.0)
        assert square_field_1d(f, f, 0.0) == 1.0

    def test_zero_at_critical_point(self):
        f = TestFunction(1.0)
        assert square_field_1d(f, f, 1.0) == 0.0

    def test_mixed_width_vanishing_factor(self):
        assert square_field_1d(TestFunction(1.0), TestFunction(2.0), 1.0) == 0.0

    def test_is_product_of_derivatives(self):
        f, g = TestFunction(0.7), TestFunction(2.5)
        xs = np.linspace(-4, 4, 17)
        np.testing.assert_array_equal(square_field_1d(f, g, xs),
                                      eval_du(f, xs) * eval_du(g, xs))


class TestLinearStatistic:
    def test_empty_configuration(self):
        c = Configuration(points=np.array([]), window=1.0)
        assert linear_statistic(TestFunction(1.0), c) == 0.0

    def test_odd_cancellation(self):
        c = Configuration(points=[1.0, -1.0], window=2.0)
        assert linear_statistic(TestFunction(1.0), c) == 0.0

    def test_two_point_value(self):
        expected = float(mp.mpf("0.5") * mp.e ** (-mp.mpf("0.125"))
                         + 2 * mp.e ** mp.mpf(-2))
        c = Configuration(points=[0.5, 2.0], window=5.0)
        assert linear_statistic(TestFunction(1.0), c) == pytest.approx(expected, rel=1e-14)

    @given(st.lists(st.floats(-9.9, 9.9), max_size=20),
           st.lists(st.floats(-9.9, 9.9), max_size=20))
    @settings(max_examples=200, deadline=None)
    def test_additivity_over_concatenation(self, a, b):
        f = TestFunction(1.3)
        ca = Configuration(points=np.array(a), window=10.0)
        cb = Configuration(points=np.array(b), window=10.0)
        cab = Configuration(points=np.array(a + b), window=10.0)
        lhs = linear_statistic(f, cab)
        rhs = linear_statistic(f, ca) + linear_statistic(f, cb)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_window_containment_enforced(self):
        with pytest.raises(ValueError):
            Configuration(points=[3.0], window=2.0)


class TestGaussianBump:
    def test_peak_value(self):
        assert GaussianBump(center=2.0, width=0.5).value(2.0) == 1.0

    def test_derivative_matches_finite_difference(self):
        b = GaussianBump(center=-1.0, width=0.8)
        xs = np.linspace(-5, 3, 33)
        h = 1e-6
        fd = (b.value(xs + h) - b.value(xs - h)) / (2 * h)
        np.testing.assert_allclose(b.deriv(xs), fd, atol=1e-8)
