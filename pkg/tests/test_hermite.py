import random
from fractions import Fraction

import pytest
from conftest import intervals
from hypothesis import given, settings
from hypothesis import strategies as st

from hermquad.exact import Polynomial, definite_integral
from hermquad.hermite import (
    EndpointData,
    apply_rule,
    hermite_interpolant,
    hermite_weights,
)
from hermquad.verify import random_fraction, weights_match_interpolant

F = Fraction
X = Polynomial([0, 1])

# Weights obtained independently by solving the 2n Hermite conditions as a
# dense linear system and integrating the result symbolically.
FROZEN_WEIGHTS = {
    (1, F(0), F(1)): ([F(1, 2)], [F(1, 2)]),
    (2, F(0), F(1)): ([F(1, 2), F(1, 12)], [F(1, 2), F(-1, 12)]),
    (3, F(0), F(1)): ([F(1, 2), F(1, 10), F(1, 120)], [F(1, 2), F(-1, 10), F(1, 120)]),
    (4, F(0), F(1)): (
        [F(1, 2), F(3, 28), F(1, 84), F(1, 1680)],
        [F(1, 2), F(-3, 28), F(1, 84), F(-1, 1680)],
    ),
    (3, F(-2, 3), F(5, 7)): (
        [F(29, 42), F(841, 4410), F(24389, 1111320)],
        [F(29, 42), F(-841, 4410), F(24389, 1111320)],
    ),
}


class TestWeights:
    @pytest.mark.parametrize("key", sorted(FROZEN_WEIGHTS, key=str))
    def test_frozen_values(self, key):
        n, a, b = key
        w = hermite_weights(n, a, b)
        assert list(w.w_a) == FROZEN_WEIGHTS[key][0]
        assert list(w.w_b) == FROZEN_WEIGHTS[key][1]

    def test_trapezoid_and_corrected_trapezoid(self):
        assert hermite_weights(1, 0, 1).w_a == (F(1, 2),)
        w = hermite_weights(2, 0, 1)
        assert w.w_a == (F(1, 2), F(1, 12))
        assert w.w_b == (F(1, 2), F(-1, 12))

    @pytest.mark.parametrize("n", range(1, 17))
    def test_first_weight_is_half_width(self, n):
        a, b = F(-3, 5), F(11, 4)
        assert hermite_weights(n, a, b).w_a[0] == (b - a) / 2

    @pytest.mark.parametrize("n", range(1, 13))
    def test_antisymmetry(self, n):
        w = hermite_weights(n, F(1, 7), F(9, 2))
        assert all(wb == (-1) ** j * wa for j, (wa, wb) in enumerate(zip(w.w_a, w.w_b)))

    @pytest.mark.parametrize("bad", [(0, 0, 1), (2, 1, 1), (-1, 0, 1)])
    def test_rejects_bad_input(self, bad):
        with pytest.raises(ValueError):
            hermite_weights(*bad)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_match_integral_of_interpolant(self, n):
        assert weights_match_interpolant(n, F(-5, 3), F(2, 9))


class TestInterpolant:
    def test_constant(self):
        data = EndpointData(0, 1, [1], [1])
        assert hermite_interpolant(data) == Polynomial([1])

    def test_identity(self):
        data = EndpointData.from_polynomial(X, 1, 0, 1)
        assert hermite_interpolant(data) == X

    def test_reproduces_cubic(self):
        data = EndpointData.from_polynomial(X**3, 2, 0, 1)
        assert hermite_interpolant(data) == X**3

    @pytest.mark.parametrize("n", range(1, 7))
    def test_reproduces_polynomials_of_degree_2n_minus_1(self, n):
        rng = random.Random(n)
        f = Polynomial(random_fraction(rng) for _ in range(2 * n))
        a, b = F(-1, 3), F(7, 4)
        assert hermite_interpolant(EndpointData.from_polynomial(f, n, a, b)) == f

    def test_rejects_equal_endpoints(self):
        with pytest.raises(ValueError):
            EndpointData(1, 1, [0], [0])

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            EndpointData(0, 1, [0, 1], [0])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 8), intervals(), st.randoms(use_true_random=False))
    def test_derivative_matching(self, n, ab, rnd):
        a, b = ab
        da = [random_fraction(rnd) for _ in range(n)]
        db = [random_fraction(rnd) for _ in range(n)]
        h = hermite_interpolant(EndpointData(a, b, da, db))
        assert h.degree is None or h.degree <= 2 * n - 1
        g = h
        for j in range(n):
            assert g(a) == da[j]
            assert g(b) == db[j]
            g = g.derivative()

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 8), intervals(), st.randoms(use_true_random=False))
    def test_rule_equals_integral_of_interpolant(self, n, ab, rnd):
        a, b = ab
        data = EndpointData(
            a, b, [random_fraction(rnd) for _ in range(n)], [random_fraction(rnd) for _ in range(n)]
        )
        assert definite_integral(hermite_interpolant(data), a, b) == apply_rule(
            hermite_weights(n, a, b), data
        )


class TestApplyRule:
    def test_constant(self):
        assert apply_rule(hermite_weights(1, 0, 1), EndpointData(0, 1, [1], [1])) == 1

    def test_cubic_exact(self):
        data = EndpointData.from_polynomial(X**3, 2, 0, 1)
        assert apply_rule(hermite_weights(2, 0, 1), data) == F(1, 4)

    def test_quartic_defect(self):
        data = EndpointData.from_polynomial(X**4, 2, 0, 1)
        value = apply_rule(hermite_weights(2, 0, 1), data)
        assert value != F(1, 5)
        assert F(1, 5) - value == F(1, 30)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_exact_on_monomials(self, n):
        a, b = F(-2, 7), F(5, 3)
        w = hermite_weights(n, a, b)
        for m in range(2 * n):
            mono = X**m
            assert apply_rule(w, EndpointData.from_polynomial(mono, n, a, b)) == definite_integral(mono, a, b)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_rule(hermite_weights(2, 0, 1), EndpointData(0, 1, [1], [1]))
