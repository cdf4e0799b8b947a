import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qradius import orlicz
from qradius.errors import Unbounded, UnknownName
from qradius.orlicz import (STANDARD_GRID, OrliczFn, builtin, complementary, hermite_hadamard_integral,
                            jensen_mean_check, kernel, right_inverse, validate_gauge, young_check)

ALL_BUILTINS = [
    builtin("power", 2), builtin("power", 3), builtin("exp_minus_one"),
    builtin("exp_minus_t_minus_one"), builtin("power_log", 1), builtin("power_log", 2),
    builtin("exp_square"), builtin("power_over_p", 2), builtin("power_over_p", 3),
]


class TestBuiltins:
    def test_power_eval(self):
        assert builtin("power", 2)(3.0) == 9.0

    def test_exp_at_zero(self):
        assert builtin("exp_minus_one")(0.0) == 0.0

    def test_power_log(self):
        assert builtin("power_log", 1)(1.0) == pytest.approx(math.log(2), rel=1e-12)

    def test_inline_param(self):
        assert builtin("power:3")(2.0) == 8.0

    @pytest.mark.parametrize("name", ["nope", "power:x", "exp_minus_one:2"])
    def test_unknown(self, name):
        with pytest.raises(UnknownName):
            builtin(name)

    def test_power_needs_p_at_least_one(self):
        with pytest.raises(UnknownName):
            builtin("power", 0.5)

    @pytest.mark.parametrize("f", ALL_BUILTINS, ids=lambda f: f.label)
    def test_defining_properties(self, f):
        validate_gauge(f)


class TestKernel:
    def test_closed_forms(self):
        assert kernel(builtin("power_over_p", 2), 3.0) == pytest.approx(3.0, abs=1e-12)
        assert kernel(builtin("exp_minus_t_minus_one"), 0.0) == 0.0
        assert kernel(builtin("power", 3), 2.0) == pytest.approx(12.0, abs=1e-12)

    def test_finite_difference_fallback(self):
        bare = OrliczFn("bare_square", lambda t: np.square(t) / 2)
        assert bare.kernel_fn is None
        assert kernel(bare, 3.0) == pytest.approx(3.0, abs=1e-8)
        assert kernel(bare, 0.0) == pytest.approx(0.0, abs=1e-6)


class TestRightInverse:
    def test_linear_kernel(self):
        f = builtin("power_over_p", 2)
        for v in (0.0, 0.5, 2.0, 10.0):
            assert right_inverse(f, v) == pytest.approx(v, abs=1e-9)

    def test_exp_kernel(self):
        f = builtin("exp_minus_t_minus_one")
        assert right_inverse(f, math.e - 1) == pytest.approx(1.0, abs=1e-9)

    def test_power_three_by_bisection(self):
        f = builtin("power", 3)
        eta = right_inverse(f, 12.0)
        assert eta == pytest.approx(2.0, abs=1e-9)
        assert abs(kernel(f, eta) - 12.0) <= 1e-9 * 13.0

    def test_below_kernel_start(self):
        # kernel of e^t - 1 is e^u with gamma(0) = 1: levels below it map to 0
        assert right_inverse(builtin("exp_minus_one"), 0.5) == 0.0

    def test_unbounded_for_linear_gauge(self):
        with pytest.raises(Unbounded):
            right_inverse(builtin("power", 1), 2.0)

    @pytest.mark.parametrize("f", [builtin("power_over_p", 3), builtin("exp_square")],
                             ids=lambda f: f.label)
    def test_inversion_residual(self, f):
        for v in STANDARD_GRID:
            eta = right_inverse(f, v)
            assert abs(kernel(f, eta) - v) <= 1e-9 * (1 + v)


class TestComplementary:
    def test_power_pair_closed_form(self):
        pair = complementary(builtin("power_over_p", 2))
        assert not pair.numeric
        assert pair.psi(4.0) == pytest.approx(8.0, abs=1e-12)

    def test_exp_pair_closed_form(self):
        pair = complementary(builtin("exp_minus_t_minus_one"))
        assert not pair.numeric
        assert pair.psi(1.0) == pytest.approx(2 * math.log(2) - 1, abs=1e-12)

    def test_numeric_matches_closed_form_p3(self):
        num = complementary(builtin("power", 2))  # conjugate of t^2 is s^2/4
        assert num.numeric
        assert num.psi(1.0) == pytest.approx(0.25, abs=1e-7)

    @pytest.mark.parametrize("p", [2.0, 3.0])
    def test_numeric_vs_closed_power_over_p(self, p):
        f = builtin("power_over_p", p)
        closed = complementary(f).psi
        pstar = p / (p - 1)
        # rebuild psi numerically from the right inverse and compare on [0, 10]
        numeric = orlicz._integrate_inverse
        for s in (0.5, 1.0, 2.0, 5.0, 10.0):
            want = s ** pstar / pstar
            assert closed(s) == pytest.approx(want, rel=1e-12)
            assert numeric(f, s) == pytest.approx(want, rel=1e-7)

    def test_numeric_vs_closed_exp_pair(self):
        f = builtin("exp_minus_t_minus_one")
        closed = complementary(f).psi
        for s in (0.5, 1.0, 2.0, 5.0, 10.0):
            assert orlicz._integrate_inverse(f, s) == pytest.approx(float(closed(s)), rel=1e-7)

    def test_involutive_on_closed_pairs(self):
        for f in (builtin("power_over_p", 3), builtin("exp_minus_t_minus_one")):
            back = complementary(complementary(f).psi).psi
            for t in STANDARD_GRID:
                assert float(back(t)) == pytest.approx(float(f(t)), rel=1e-6)


class TestHermiteHadamard:
    def test_square_analytic(self):
        # integral of (1-t)^2 over [0,1] is 1/3, between 1/4 and 1/2
        val = hermite_hadamard_integral(builtin("power", 2), 0.0, 1.0)
        assert val == pytest.approx(1 / 3, abs=1e-9)
        assert 0.25 - 1e-9 <= val <= 0.5 + 1e-9

    def test_constant_endpoints(self):
        for f in ALL_BUILTINS:
            assert hermite_hadamard_integral(f, 2.0, 2.0) == pytest.approx(float(f(2.0)), rel=1e-12)

    def test_linear_gauge_exact(self):
        assert hermite_hadamard_integral(builtin("power", 1), 3.0, 5.0) == pytest.approx(4.0, rel=1e-12)

    def test_sandwich_on_seeded_pairs(self):
        rng = np.random.default_rng(2024)
        pairs = rng.uniform(0, 10, size=(100, 2))
        for f in ALL_BUILTINS:
            for a, b in pairs:
                mid = hermite_hadamard_integral(f, a, b)
                assert float(f((a + b) / 2)) - 1e-9 <= mid <= (float(f(a)) + float(f(b))) / 2 + 1e-9

    @given(st.floats(0, 10), st.floats(0, 10))
    @settings(max_examples=100, deadline=None)
    def test_sandwich_property(self, a, b):
        f = builtin("exp_minus_one")
        mid = hermite_hadamard_integral(f, a, b)
        assert float(f((a + b) / 2)) - 1e-9 <= mid
        assert mid <= (float(f(a)) + float(f(b))) / 2 + 1e-9


class TestYoung:
    def test_power_pair_equality_at_one(self):
        pair = complementary(builtin("power_over_p", 2))
        lhs, rhs, slack = young_check(pair, 1.0, 1.0)
        assert (lhs, rhs) == (1.0, 1.0)
        assert abs(slack) < 1e-12

    def test_zero_u(self):
        pair = complementary(builtin("power_over_p", 2))
        _, rhs, slack = young_check(pair, 0.0, 3.0)
        assert slack == rhs >= 0

    def test_exp_pair_equality_on_kernel(self):
        pair = complementary(builtin("exp_minus_t_minus_one"))
        _, _, slack = young_check(pair, 1.0, math.e - 1)
        assert abs(slack) <= 1e-9

    @pytest.mark.parametrize("f", [builtin("power_over_p", 2), builtin("power_over_p", 3),
                                   builtin("exp_minus_t_minus_one")], ids=lambda f: f.label)
    def test_equality_locus_kernel_form(self, f):
        # u gamma(u) = phi(u) + psi(gamma(u)) along v = gamma(u)
        pair = complementary(f)
        for u in STANDARD_GRID:
            v = kernel(f, u)
            _, _, slack = young_check(pair, u, v)
            assert abs(slack) <= 1e-8 * max(1.0, u * v)

    @given(st.floats(0, 50), st.floats(0, 50))
    @settings(max_examples=150, deadline=None)
    def test_inequality_property(self, u, v):
        pair = complementary(builtin("power_over_p", 2))
        _, _, slack = young_check(pair, u, v)
        assert slack >= -1e-9


class TestJensenMean:
    def test_square(self):
        assert jensen_mean_check(builtin("power", 2), [1.0, 3.0]) == (4.0, 5.0)

    def test_constant(self):
        lhs, rhs = jensen_mean_check(builtin("exp_square"), [2.0, 2.0, 2.0])
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_exp_example(self):
        lhs, rhs = jensen_mean_check(builtin("exp_minus_one"), [0.0, 2.0])
        assert lhs == pytest.approx(math.e - 1, rel=1e-12)
        assert rhs == pytest.approx((math.exp(2) - 1) / 2, rel=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            jensen_mean_check(builtin("power", 2), [])

    @given(st.lists(st.floats(0, 20), min_size=1, max_size=8))
    @settings(max_examples=150, deadline=None)
    def test_mean_inequality_property(self, values):
        for f in (builtin("power", 2), builtin("exp_minus_one")):
            lhs, rhs = jensen_mean_check(f, values)
            assert lhs <= rhs + 1e-9
