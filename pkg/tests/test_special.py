import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sp

from leometa import (
    ConvergenceError,
    chebyshev_rule,
    compositions,
    multinomial,
    regularized_incomplete_beta,
    regularized_lower_gamma,
    regularized_upper_gamma,
)


class TestChebyshevRule:
    def test_node_formula(self):
        rule = chebyshev_rule(7)
        k = np.arange(1, 8)
        assert np.allclose(rule.nodes, np.cos((2 * k - 1) * np.pi / 14.0), atol=1e-15)
        assert np.allclose(rule.weights, (np.pi / 7) * np.sqrt(1 - rule.nodes**2), atol=1e-15)

    def test_nodes_symmetric_and_interior(self):
        rule = chebyshev_rule(40)
        assert abs(float(np.sum(rule.nodes))) < 1e-13
        assert np.all(np.abs(rule.nodes) < 1.0)

    def test_order_one(self):
        rule = chebyshev_rule(1)
        assert rule.nodes[0] == pytest.approx(0.0, abs=1e-15)
        assert rule.mapped_nodes(2.0, 6.0)[0] == pytest.approx(4.0)

    def test_rejects_nonpositive_order(self):
        with pytest.raises(ValueError):
            chebyshev_rule(0)

    @pytest.mark.parametrize("order", [2, 5, 30])
    def test_exact_for_native_weight(self, order):
        # sqrt(1 - t^2) is the rule's own weight function, integrated
        # exactly from order 2 onward.
        rule = chebyshev_rule(order)
        got = rule.integrate(lambda t: np.sqrt(np.clip(1 - t * t, 0.0, None)), -1.0, 1.0)
        assert got == pytest.approx(math.pi / 2, abs=1e-12)

    def test_linear_integrand_order20(self):
        # For integrands without the sqrt(1-t^2) factor the rule is not
        # exact; the error of int_0^1 r dr at order K is pi^2/(48 K^2)
        # to leading order, about 5.1e-4 at K=20.
        got = chebyshev_rule(20).integrate(lambda r: r, 0.0, 1.0)
        assert got == pytest.approx(0.5, abs=6e-4)
        assert abs(got - 0.5) > 1e-5  # the bias is real, not roundoff

    def test_cubics_order30(self):
        rule = chebyshev_rule(30)
        exact = {0: 1.0, 1: 0.5, 2: 1.0 / 3.0, 3: 0.25}
        worst = max(
            abs(rule.integrate(lambda r, d=d: r**d, 0.0, 1.0) - e) for d, e in exact.items()
        )
        assert worst < 5e-4

    def test_quadratic_error_decay(self):
        # Error should fall by ~100x when the order grows 10x.
        e20 = abs(chebyshev_rule(20).integrate(lambda r: r, 0.0, 1.0) - 0.5)
        e200 = abs(chebyshev_rule(200).integrate(lambda r: r, 0.0, 1.0) - 0.5)
        assert e200 < e20 / 50.0
        assert e200 < 6e-6

    def test_smooth_integrand_vs_quad(self):
        got = chebyshev_rule(400).integrate(lambda t: np.exp(-t * t), -2.0, 3.0)
        from scipy import integrate

        want, _ = integrate.quad(lambda t: math.exp(-t * t), -2.0, 3.0)
        assert got == pytest.approx(want, rel=1e-5)

    def test_mapped_nodes_cover_interval(self):
        rule = chebyshev_rule(16)
        mapped = rule.mapped_nodes(3.0, 11.0)
        assert np.all(mapped > 3.0) and np.all(mapped < 11.0)


class TestRegularizedGamma:
    def test_at_zero(self):
        for m in (1, 2, 5):
            assert regularized_upper_gamma(m, 0.0) == 1.0

    def test_rayleigh_order_is_exp(self):
        for x in (0.0, 0.3, 2.0, 10.0):
            assert regularized_upper_gamma(1, x) == pytest.approx(math.exp(-x), rel=1e-14)

    def test_frozen_value(self):
        # Q(3, 3) = e^-3 (1 + 3 + 9/2)
        assert regularized_upper_gamma(3, 3.0) == pytest.approx(
            0.42319008112684353, rel=1e-13
        )

    def test_vectorized(self):
        x = np.linspace(0.0, 20.0, 57)
        out = regularized_upper_gamma(4, x)
        assert out.shape == x.shape
        assert np.all(np.diff(out) <= 0.0)
        assert np.all((out >= 0.0) & (out <= 1.0))

    def test_against_scipy(self):
        x = np.geomspace(1e-3, 80.0, 40)
        for m in (1, 2, 3, 7):
            assert np.allclose(
                regularized_upper_gamma(m, x), sp.gammaincc(m, x), atol=1e-12
            )

    @given(m=st.integers(1, 10), x=st.floats(0.0, 50.0))
    @settings(max_examples=200, deadline=None)
    def test_complement(self, m, x):
        assert regularized_lower_gamma(m, x) + regularized_upper_gamma(m, x) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            regularized_upper_gamma(0, 1.0)
        with pytest.raises(ValueError):
            regularized_upper_gamma(2.5, 1.0)

    def test_rejects_negative_x(self):
        with pytest.raises(ValueError):
            regularized_upper_gamma(2, -0.1)


class TestIncompleteBeta:
    def test_uniform_shape_is_identity(self):
        for x in (0.0, 0.25, 0.5, 0.9, 1.0):
            assert regularized_incomplete_beta(x, 1.0, 1.0) == pytest.approx(x, abs=1e-14)

    def test_frozen_value(self):
        # I_{1/4}(2, 3) = 67/256 by direct expansion of the quartic.
        assert regularized_incomplete_beta(0.25, 2.0, 3.0) == pytest.approx(
            67.0 / 256.0, abs=1e-12
        )

    def test_symmetric_shapes_at_half(self):
        for shape in (0.5, 1.7, 4.0, 25.0):
            assert regularized_incomplete_beta(0.5, shape, shape) == pytest.approx(
                0.5, abs=1e-12
            )

    def test_endpoints(self):
        assert regularized_incomplete_beta(0.0, 3.0, 4.0) == 0.0
        assert regularized_incomplete_beta(1.0, 3.0, 4.0) == 1.0

    @given(
        x=st.floats(1e-6, 1.0 - 1e-6),
        a=st.floats(0.05, 80.0),
        b=st.floats(0.05, 80.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_reflection_identity(self, x, a, b):
        lhs = regularized_incomplete_beta(x, a, b)
        rhs = 1.0 - regularized_incomplete_beta(1.0 - x, b, a)
        assert lhs == pytest.approx(rhs, abs=1e-9)

    @given(
        x=st.floats(1e-6, 1.0 - 1e-6),
        a=st.floats(0.05, 80.0),
        b=st.floats(0.05, 80.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_against_scipy(self, x, a, b):
        assert regularized_incomplete_beta(x, a, b) == pytest.approx(
            float(sp.betainc(a, b, x)), abs=1e-10
        )

    def test_monotone_in_x(self):
        xs = np.linspace(0.0, 1.0, 101)
        vals = [regularized_incomplete_beta(float(x), 2.3, 5.1) for x in xs]
        assert np.all(np.diff(vals) >= 0.0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            regularized_incomplete_beta(-0.1, 2.0, 3.0)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.1, 2.0, 3.0)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(0.5, 0.0, 3.0)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(0.5, 2.0, -1.0)

    def test_exhausted_budget_raises(self):
        with pytest.raises(ConvergenceError):
            regularized_incomplete_beta(0.5, 2.0, 3.0, max_iter=1)


class TestCompositions:
    def test_small_cases(self):
        assert list(compositions(1, 1)) == [(1,)]
        assert sorted(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
        assert len(list(compositions(2, 3))) == 6

    def test_deterministic_order(self):
        assert list(compositions(3, 2)) == list(compositions(3, 2))

    @given(total=st.integers(0, 6), parts=st.integers(1, 5))
    @settings(max_examples=60, deadline=None)
    def test_count_and_sums(self, total, parts):
        seen = list(compositions(total, parts))
        assert len(seen) == math.comb(total + parts - 1, parts - 1)
        assert len(set(seen)) == len(seen)
        assert all(len(c) == parts and sum(c) == total for c in seen)
        assert all(all(v >= 0 for v in c) for c in seen)

    @given(total=st.integers(1, 6), parts=st.integers(1, 5))
    @settings(max_examples=60, deadline=None)
    def test_multinomial_theorem(self, total, parts):
        # sum over compositions of the multinomial coefficient is parts^total
        assert sum(multinomial(total, c) for c in compositions(total, parts)) == parts**total

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            list(compositions(-1, 2))
        with pytest.raises(ValueError):
            list(compositions(2, 0))


class TestMultinomial:
    def test_values(self):
        assert multinomial(2, (1, 1)) == 2
        assert multinomial(2, (2, 0)) == 1
        assert multinomial(3, (1, 1, 1)) == 6
        assert multinomial(6, (2, 2, 2)) == 90

    def test_mismatched_sum_raises(self):
        with pytest.raises(ValueError):
            multinomial(3, (1, 1))

    def test_negative_part_raises(self):
        with pytest.raises(ValueError):
            multinomial(1, (2, -1))
