import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from graphdsp import (
    ValidationError,
    build_graph,
    cycle_graph,
    graph_shift,
    knn_similarity_graph,
    normalize_call_graph,
)


class TestBuildGraph:
    def test_empty_edge_list_gives_zero_adjacency(self):
        g = build_graph(2, [])
        assert_allclose(g.dense(), np.zeros((2, 2)))

    def test_cycle_matches_circulant_convention(self):
        # edge (src, dst) sets A[dst, src]: A[n, m] = 1 iff n - m = 1 mod 4
        g = build_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])
        expected = np.array(
            [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], dtype=complex
        )
        assert_allclose(g.dense(), expected)
        assert_allclose(cycle_graph(4).dense(), expected)

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValidationError, match="duplicate"):
            build_graph(2, [(0, 1, 1), (0, 1, 2)])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValidationError, match="out of range"):
            build_graph(2, [(0, 2, 1)])

    def test_non_finite_weight_rejected(self):
        with pytest.raises(ValidationError, match="finite"):
            build_graph(2, [(0, 1, float("nan"))])

    def test_neighborhood_recomputable_from_adjacency(self):
        g = build_graph(3, [(0, 1, 2.0), (2, 1, -1.0)])
        # node 1 receives from nodes 0 and 2
        assert list(g.neighborhood(1)) == [0, 2]
        assert list(g.neighborhood(0)) == []

    def test_sparse_storage_above_threshold(self):
        g = build_graph(5, [(0, 1, 1)], dense_threshold=3)
        assert g.is_sparse
        assert g.dense()[1, 0] == 1


class TestGraphShift:
    def test_cycle_shift_is_time_delay(self):
        g = cycle_graph(4)
        s = g.signal([1, 2, 3, 4])
        assert_allclose(graph_shift(g, s).values, [4, 1, 2, 3])

    def test_zero_signal_stays_zero(self):
        g = cycle_graph(5)
        out = graph_shift(g, g.signal(np.zeros(5)))
        assert_allclose(out.values, 0)

    def test_complex_weights_hand_product(self):
        # A[0,1] = i, A[1,0] = -1; s = (1, 1) -> (i, -1)
        g = build_graph(2, [(1, 0, 1j), (0, 1, -1)])
        out = graph_shift(g, g.signal([1, 1]))
        assert_allclose(out.values, [1j, -1])

    def test_signal_bound_to_other_graph_rejected(self):
        g1, g2 = cycle_graph(4), build_graph(4, [(0, 1, 2.0)])
        with pytest.raises(ValidationError, match="different graph"):
            graph_shift(g2, g1.signal([1, 2, 3, 4]))

    @given(
        alpha=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        beta=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        seed=st.integers(0, 2**16),
    )
    @settings(max_examples=25, deadline=None)
    def test_shift_is_linear(self, alpha, beta, seed):
        rng = np.random.default_rng(seed)
        g = build_graph(
            5, [(i, j, w) for (i, j), w in zip(
                [(0, 1), (1, 2), (2, 0), (3, 4), (4, 1)],
                rng.standard_normal(5) + 1j * rng.standard_normal(5),
            )],
        )
        s1 = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        s2 = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        lhs = graph_shift(g, g.signal(alpha * s1 + beta * s2)).values
        rhs = alpha * graph_shift(g, g.signal(s1)).values + beta * graph_shift(
            g, g.signal(s2)
        ).values
        scale = max(1.0, float(np.linalg.norm(rhs)))
        assert np.linalg.norm(lhs - rhs) <= 1e-12 * scale

    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_cycle_shift_n_times_is_identity(self, n):
        g = cycle_graph(n)
        s = g.signal(np.arange(1, n + 1, dtype=float))
        out = s
        for _ in range(n):
            out = graph_shift(g, out)
        assert_allclose(out.values, s.values, atol=1e-14)


class TestKnnSimilarityGraph:
    @pytest.mark.parametrize("d", [0.5, 1.0, 7.0, 50.0])
    def test_two_points_normalization_cancels(self, d):
        # single neighbor each: w = e^{-d^2} / sqrt(e^{-d^2} e^{-d^2}) = 1,
        # including distances where e^{-d^2} underflows
        g = knn_similarity_graph([[0.0], [d]], 1)
        assert_allclose(g.dense()[0, 1], 1.0, atol=1e-12)
        assert_allclose(g.dense()[1, 0], 1.0, atol=1e-12)

    def test_three_collinear_points_weights(self):
        # positions 0, 1, 10 with K=1: nearest sets {0:1, 1:0, 2:1};
        # union edges {0-1, 1-2}; weights evaluated here independently
        g = knn_similarity_graph([[0.0], [1.0], [10.0]], 1)
        a = g.dense().real
        assert a[0, 2] == 0 and a[2, 0] == 0
        e1 = math.exp(-1.0)  # d(0,1)^2 = 1
        e81 = math.exp(-81.0)  # d(1,2)^2 = 81
        w01 = e1 / math.sqrt(e1 * (e1 + e81))
        w12 = e81 / math.sqrt((e1 + e81) * e81)
        assert_allclose(a[0, 1], w01, rtol=1e-12)
        assert_allclose(a[1, 0], w01, rtol=1e-12)
        assert_allclose(a[1, 2], w12, rtol=1e-12)
        assert_allclose(a[2, 1], w12, rtol=1e-12)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_symmetric_with_entries_in_unit_interval(self, seed):
        rng = np.random.default_rng(seed)
        pts = rng.random((20, 2)) * 4
        g = knn_similarity_graph(pts, 3)
        a = g.dense().real
        assert np.array_equal(a, a.T)
        vals = a[a != 0]
        assert np.all(vals > 0) and np.all(vals <= 1 + 1e-12)

    def test_k_too_large_rejected(self):
        with pytest.raises(ValidationError, match="K"):
            knn_similarity_graph([[0.0], [1.0]], 2)

    def test_distance_ties_pick_lower_index(self):
        # node 0 equidistant from 1 and 2 -> picks 1; nodes 1 and 2 have
        # closer partners of their own, so no edge 0-2 appears via the union
        pts = [[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [1.1, 0.0], [-1.1, 0.0]]
        g = knn_similarity_graph(pts, 1)
        a = g.dense().real
        assert a[0, 1] != 0
        assert a[0, 2] == 0

    def test_custom_metric(self):
        pts = [[0.0], [2.0], [9.0]]
        g1 = knn_similarity_graph(pts, 1)
        g2 = knn_similarity_graph(pts, 1, metric=lambda p, q: abs(p[0] - q[0]))
        assert_allclose(g1.dense().real, g2.dense().real, rtol=1e-12)


class TestNormalizeCallGraph:
    def test_proportions(self):
        t = np.array([[0, 30, 10], [5, 0, 5], [1, 0, 0]], dtype=float)
        g = normalize_call_graph(t)
        assert_allclose(g.dense()[0].real, [0, 0.75, 0.25])
        assert_allclose(g.dense()[1].real, [0.5, 0, 0.5])

    def test_all_zero_row_is_isolated_not_error(self):
        t = np.zeros((3, 3))
        t[0, 1] = 4
        g = normalize_call_graph(t)
        assert_allclose(g.dense()[1], 0)
        assert_allclose(g.dense()[2], 0)

    def test_nonzero_rows_sum_to_one(self, rng):
        t = rng.random((5, 5)) * 10
        np.fill_diagonal(t, 0.0)
        g = normalize_call_graph(t)
        sums = g.dense().real.sum(axis=1)
        for s in sums:
            assert abs(s - 1.0) <= 1e-15 or abs(s) <= 1e-15

    def test_negative_entries_rejected(self):
        t = np.zeros((2, 2))
        t[0, 1] = -1
        with pytest.raises(ValidationError, match="nonnegative"):
            normalize_call_graph(t)

    def test_nonzero_diagonal_rejected(self):
        with pytest.raises(ValidationError, match="diagonal"):
            normalize_call_graph(np.eye(2))


class TestFingerprint:
    def test_same_graph_same_fingerprint(self):
        g1 = build_graph(3, [(0, 1, 1.5), (1, 2, -2.0)])
        g2 = build_graph(3, [(1, 2, -2.0), (0, 1, 1.5)])
        assert g1.fingerprint == g2.fingerprint

    def test_different_weight_changes_fingerprint(self):
        g1 = build_graph(2, [(0, 1, 1.0)])
        g2 = build_graph(2, [(0, 1, 2.0)])
        assert g1.fingerprint != g2.fingerprint
