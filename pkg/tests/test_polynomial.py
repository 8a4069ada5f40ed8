from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from graphdsp import (
    HermiteConstraint,
    InterpolationError,
    Polynomial,
    ValidationError,
    char_poly,
    eval_on_jordan_block,
    evaluate_on_matrix,
    hermite_interpolate,
    min_poly,
    poly_eval,
    poly_from_roots,
    poly_mod_mul,
)
from graphdsp.exact import GaussianRational as GR
from graphdsp.graph import cycle_graph
from graphdsp.spectral import jordan_decompose

from conftest import random_digraph


class TestPolynomialBasics:
    def test_trimming_and_degree(self):
        p = Polynomial([1.0, 2.0, 1e-15])
        assert p.degree == 1
        assert Polynomial([]).is_zero
        assert Polynomial([0.0, 0.0]).is_zero

    def test_exact_coeffs_stay_exact(self):
        p = Polynomial([1, Fraction(1, 3)])
        assert p.is_exact
        assert p(Fraction(3)) == 2

    def test_mixed_backend_arithmetic_promotes(self):
        p = Polynomial([1, 2]) + Polynomial([0.5])
        assert not p.is_exact
        assert_allclose(p.coeffs_complex(), [1.5, 2.0])

    def test_divmod_by_hand(self):
        # (x^2 + 3x + 2) = (x + 1)(x + 2)
        num = Polynomial([2, 3, 1])
        q, r = divmod(num, Polynomial([1, 1]))
        assert q == Polynomial([2, 1])
        assert r.is_zero

    def test_derivative_exact_coefficients(self):
        p = Polynomial([0, 0, 3, 1])  # 3x^2 + x^3
        assert p.derivative() == Polynomial([0, 6, 3])
        assert p.derivative(4).is_zero

    def test_compose(self):
        h = Polynomial([0, 0, 1])  # x^2
        r = Polynomial([1, 1])  # x + 1
        assert h.compose(r) == Polynomial([1, 2, 1])


class TestPolyEval:
    def test_square_at_three(self):
        p = Polynomial([0, 0, 1])
        assert poly_eval(p, 3.0) == 9
        assert poly_eval(p, 3.0, 1) == 6
        assert poly_eval(p, 3.0, 3) == 0

    def test_negative_order_rejected(self):
        with pytest.raises(ValidationError):
            poly_eval(Polynomial([1]), 0.0, -1)


class TestPolyModMul:
    def test_x_squared_mod_cycle(self):
        x = Polynomial([0, 1])
        m = Polynomial([-1, 0, 1])  # x^2 - 1
        assert poly_mod_mul(x, x, m) == Polynomial([1])

    def test_identity_element(self):
        one = Polynomial([1])
        b = Polynomial([3, 1, 4])
        m = Polynomial([1, 0, 0, 1])
        assert poly_mod_mul(one, b, m) == b % m

    def test_hand_long_division(self):
        # (x+1)(x+2) = x^2 + 3x + 2 = (x^2 + 1) + (3x + 1)
        a = Polynomial([1, 1])
        b = Polynomial([2, 1])
        m = Polynomial([1, 0, 1])
        assert poly_mod_mul(a, b, m) == Polynomial([1, 3])

    def test_zero_modulus_rejected(self):
        with pytest.raises(ValidationError, match="zero"):
            poly_mod_mul(Polynomial([1]), Polynomial([1]), Polynomial([]))


class TestCharPoly:
    def test_zero_matrix(self):
        p = char_poly(np.zeros((2, 2)))
        assert_allclose(p.coeffs_complex(), [0, 0, 1], atol=1e-12)

    def test_cycle_graph_det_expansion(self):
        # det(xI - C4) = x^4 - 1
        p = char_poly(cycle_graph(4).dense())
        assert_allclose(p.coeffs_complex(), [-1, 0, 0, 0, 1], atol=1e-10)

    def test_cycle_exact_backend(self):
        p = char_poly(cycle_graph(4).dense(), backend="exact")
        assert list(p.coeffs) == [GR(-1), GR(0), GR(0), GR(0), GR(1)]

    def test_diagonal(self):
        p = char_poly(np.diag([1.0, 2.0]))
        assert_allclose(p.coeffs_complex(), [2, -3, 1], atol=1e-12)

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            char_poly(np.array([[np.inf, 0], [0, 1]]))

    @pytest.mark.parametrize("n,seed", [(3, 1), (5, 2), (8, 3)])
    def test_cayley_hamilton(self, n, seed):
        g = random_digraph(n, seed)
        a = g.dense()
        p = char_poly(a)
        residual = np.linalg.norm(evaluate_on_matrix(p, a))
        assert residual < 1e-8 * max(np.linalg.norm(a), 1.0) ** n


class TestMinPoly:
    def test_single_jordan_block(self):
        from graphdsp.graph import Graph

        g = Graph.from_adjacency(np.array([[5.0, 1.0], [0.0, 5.0]]))
        basis = jordan_decompose(g, backend="exact")
        m = min_poly(basis)
        assert m == Polynomial([GR(25), GR(-10), GR(1)])  # (x - 5)^2

    def test_identity_has_min_poly_degree_one(self):
        from graphdsp.graph import Graph

        g = Graph.from_adjacency(np.eye(2))
        basis = jordan_decompose(g, backend="exact")
        m = min_poly(basis)
        assert m == Polynomial([GR(-1), GR(1)])  # x - 1, so p != m
        p = char_poly(g.dense(), backend="exact")
        assert p != m

    @pytest.mark.parametrize("seed", [4, 5])
    def test_distinct_eigenvalues_give_m_equals_p(self, seed):
        g = random_digraph(6, seed)
        basis = jordan_decompose(g)
        m = min_poly(basis)
        p = char_poly(g.dense())
        assert m.degree == p.degree == 6
        assert_allclose(m.coeffs_complex(), p.coeffs_complex(), atol=1e-7)

    @pytest.mark.parametrize("seed", [6, 7])
    def test_min_poly_divides_char_poly(self, seed):
        g = random_digraph(5, seed)
        basis = jordan_decompose(g)
        m = min_poly(basis)
        p = char_poly(g.dense())
        _, rem = divmod(p, m)
        assert np.linalg.norm(rem.coeffs_complex()) < 1e-10 or rem.is_zero


class TestEvalOnJordanBlock:
    def test_square_on_size_two(self):
        lam = 1.5 + 0.5j
        out = eval_on_jordan_block(Polynomial([0, 0, 1]), lam, 2)
        assert_allclose(out, [[lam**2, 2 * lam], [0, lam**2]])

    def test_constant_gives_identity(self):
        out = eval_on_jordan_block(Polynomial([1]), 2.0, 3)
        assert_allclose(out, np.eye(3))

    def test_cube_on_size_three_matches_matrix_power(self):
        # independent oracle: cube the literal Jordan block numerically
        j = np.array([[2.0, 1, 0], [0, 2, 1], [0, 0, 2]])
        oracle = np.linalg.matrix_power(j, 3)
        out = eval_on_jordan_block(Polynomial([0, 0, 0, 1]), 2.0, 3)
        assert_allclose(out, oracle, atol=1e-12)
        assert_allclose(oracle, [[8, 12, 6], [0, 8, 12], [0, 0, 8]])

    def test_exact_inputs_give_exact_matrix(self):
        out = eval_on_jordan_block(Polynomial([0, 0, 1]), GR(3), 2)
        assert out.dtype == object
        assert out[0, 1] == 6

    @given(
        seed=st.integers(0, 2**16),
        size=st.integers(1, 4),
        deg_h=st.integers(0, 3),
        deg_g=st.integers(0, 3),
    )
    @settings(max_examples=40, deadline=None)
    def test_product_lemma(self, seed, size, deg_h, deg_g):
        # h(J) g(J) = (h g)(J) on any single Jordan block
        rng = np.random.default_rng(seed)
        lam = complex(rng.standard_normal(), rng.standard_normal())
        h = Polynomial(rng.standard_normal(deg_h + 1))
        gp = Polynomial(rng.standard_normal(deg_g + 1))
        lhs = eval_on_jordan_block(h, lam, size) @ eval_on_jordan_block(gp, lam, size)
        rhs = eval_on_jordan_block(h * gp, lam, size)
        scale = max(1.0, float(np.linalg.norm(rhs)))
        assert np.linalg.norm(lhs - rhs) <= 1e-10 * scale


class TestHermiteInterpolate:
    def test_value_and_slope_at_one(self):
        p = hermite_interpolate([HermiteConstraint(1.0, (1.0, 1.0))])
        assert_allclose(p.coeffs_complex(), [0, 1], atol=1e-12)  # p(x) = x

    def test_two_equal_values_give_constant(self):
        p = hermite_interpolate(
            [HermiteConstraint(0.0, (1.0,)), HermiteConstraint(1.0, (1.0,))]
        )
        assert_allclose(p.coeffs_complex(), [1.0], atol=1e-12)

    def test_reciprocal_fit_two_points(self):
        # p(1) = 1, p(2) = 1/2  ->  p(x) = -x/2 + 3/2 (solved by hand)
        p = hermite_interpolate(
            [HermiteConstraint(1.0, (1.0,)), HermiteConstraint(2.0, (0.5,))]
        )
        assert_allclose(p.coeffs_complex(), [1.5, -0.5], atol=1e-12)

    def test_exact_backend_is_exact(self):
        p = hermite_interpolate(
            [HermiteConstraint(GR(1), (GR(1),)), HermiteConstraint(GR(2), (GR(Fraction(1, 2)),))]
        )
        assert p.is_exact
        assert list(p.coeffs) == [GR(Fraction(3, 2)), GR(Fraction(-1, 2))]

    def test_duplicate_points_rejected(self):
        with pytest.raises(ValidationError, match="distinct"):
            hermite_interpolate(
                [HermiteConstraint(1.0, (1.0,)), HermiteConstraint(1.0, (2.0,))]
            )

    def test_ill_conditioned_system_raises(self):
        constraints = [
            HermiteConstraint(float(k), (1.0,)) for k in range(1, 31)
        ]
        with pytest.raises(InterpolationError):
            hermite_interpolate(constraints)

    @given(seed=st.integers(0, 2**16))
    @settings(max_examples=30, deadline=None)
    def test_constraints_are_satisfied(self, seed):
        rng = np.random.default_rng(seed)
        n_pts = int(rng.integers(1, 4))
        points = rng.standard_normal(n_pts) * 2 + np.arange(n_pts) * 5
        constraints = []
        for pt in points:
            orders = int(rng.integers(1, 3))
            constraints.append(
                HermiteConstraint(complex(pt), tuple(rng.standard_normal(orders)))
            )
        p = hermite_interpolate(constraints)
        for c in constraints:
            for order, val in enumerate(c.values):
                assert abs(poly_eval(p, c.point, order) - val) <= 1e-9 * max(
                    1.0, abs(val)
                )


class TestPolyFromRoots:
    def test_exact_roots(self):
        p = poly_from_roots([GR(1), GR(2)])
        assert p == Polynomial([GR(2), GR(-3), GR(1)])

    def test_repeated_roots(self):
        p = poly_from_roots([2.0, 2.0])
        assert_allclose(p.coeffs_complex(), [4, -4, 1], atol=1e-12)
