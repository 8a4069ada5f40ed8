import numpy as np
import pytest
from numpy.testing import assert_allclose

from graphdsp import (
    DecompositionError,
    Polynomial,
    ValidationError,
    frequency_response,
    gft,
    graph_shift,
    igft,
    jordan_decompose,
    spectral_filter,
)
from graphdsp.filtering import apply_filter, make_filter
from graphdsp.graph import Graph, cycle_graph, knn_similarity_graph, path_graph
from graphdsp.spectral import Spectrum

from conftest import planted_jordan_graph, random_digraph


def dft_matrix(n: int) -> np.ndarray:
    k, m = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(-2j * np.pi * k * m / n)


class TestCycleDecomposition:
    def test_eigenvalues_are_roots_of_unity(self):
        basis = jordan_decompose(cycle_graph(4))
        expected = sorted([1, 1j, -1, -1j], key=lambda z: (z.real, z.imag))
        got = sorted(basis.eigenvalues, key=lambda z: (z.real, z.imag))
        assert_allclose(got, expected, atol=1e-10)
        assert basis.chains == ((1,),) * 4

    def test_f_rows_are_dft_rows_up_to_scale(self):
        n = 4
        basis = jordan_decompose(cycle_graph(n))
        dft = dft_matrix(n)
        matched = set()
        for i in range(n):
            row = basis.F[i]
            for k in range(n):
                d = dft[k] / np.linalg.norm(dft[k])
                corr = abs(np.vdot(d, row / np.linalg.norm(row)))
                if corr > 1 - 1e-9:
                    matched.add(k)
                    break
            else:
                pytest.fail(f"row {i} of F matches no DFT row")
        assert matched == set(range(n))

    def test_impulse_spectrum_is_flat(self):
        n = 8
        g = cycle_graph(n)
        basis = jordan_decompose(g)
        delta = np.zeros(n)
        delta[0] = 1.0
        spec = gft(basis, g.signal(delta))
        mags = np.abs(spec.coeffs)
        assert_allclose(mags, mags[0], atol=1e-10)
        assert mags[0] > 0


class TestJordanStructureRecovery:
    def test_literal_jordan_block(self):
        g = Graph.from_adjacency(np.array([[5.0, 1.0], [0.0, 5.0]]))
        basis = jordan_decompose(g, backend="exact")
        assert basis.eigenvalues == (5 + 0j,)
        assert basis.chains == ((2,),)

    def test_prescribed_blocks_recovered(self):
        spec = [(1.0, 2), (1.0, 1), (2.0, 3)]
        g, expected = planted_jordan_graph(spec, seed=11)
        basis = jordan_decompose(g, backend="exact")
        got = {
            lam: sorted(chains, reverse=True)
            for lam, chains in zip(basis.eigenvalues, basis.chains)
        }
        assert got == expected
        a = g.dense()
        resid = np.linalg.norm(a - basis.V @ basis.jordan_matrix() @ basis.F)
        assert resid <= 1e-8 * np.linalg.norm(a)

    def test_gaussian_integer_eigenvalues(self):
        spec = [(1 + 2j, 2), (-1j, 1)]
        g, expected = planted_jordan_graph(spec, seed=5)
        basis = jordan_decompose(g, backend="exact")
        got = {
            lam: sorted(chains, reverse=True)
            for lam, chains in zip(basis.eigenvalues, basis.chains)
        }
        assert got == expected

    def test_numeric_refuses_defective(self):
        g, _ = planted_jordan_graph([(2.0, 3), (1.0, 1)], seed=3)
        with pytest.raises(DecompositionError, match="defective"):
            jordan_decompose(g, tol_cluster=1e-4)

    def test_exact_refuses_irrational_eigenvalues(self):
        # path-graph eigenvalues 2 cos(k pi / 4) are irrational
        with pytest.raises(DecompositionError, match="rational"):
            jordan_decompose(path_graph(3), backend="exact")

    def test_provided_eigenvalues_shortcut(self):
        g, expected = planted_jordan_graph([(3.0, 2), (0.0, 2)], seed=9)
        basis = jordan_decompose(g, backend="exact", eigenvalues=[3, 0])
        got = {
            lam: sorted(chains, reverse=True)
            for lam, chains in zip(basis.eigenvalues, basis.chains)
        }
        assert got == expected

    def test_eigenvalue_ordering_lexicographic(self):
        g = Graph.from_adjacency(np.diag([2.0, -1.0, 2.0, 0.5]))
        basis = jordan_decompose(g)
        eigs = np.array(basis.eigenvalues)
        order = np.lexsort((eigs.imag, eigs.real))
        assert list(order) == list(range(len(eigs)))

    def test_size_limits_enforced(self):
        g = cycle_graph(70)
        with pytest.raises(ValidationError, match="exact backend"):
            jordan_decompose(g, backend="exact")


class TestTransforms:
    def test_column_of_v_maps_to_unit_vector(self):
        g = random_digraph(6, seed=21)
        basis = jordan_decompose(g)
        k = 3
        s = g.signal(basis.V[:, k])
        spec = gft(basis, s)
        expected = np.zeros(6)
        expected[k] = 1.0
        assert_allclose(spec.coeffs, expected, atol=1e-9)

    @pytest.mark.parametrize("seed", [31, 32, 33])
    def test_gft_igft_round_trip(self, seed):
        g = random_digraph(7, seed=seed)
        basis = jordan_decompose(g)
        rng = np.random.default_rng(seed)
        s = g.signal(rng.standard_normal(7) + 1j * rng.standard_normal(7))
        back = igft(basis, gft(basis, s))
        assert np.linalg.norm(back.values - s.values) <= 1e-10 * max(
            1.0, np.linalg.norm(s.values)
        ) * basis.cond_V

    def test_spectrum_of_wrong_basis_rejected(self):
        g = random_digraph(5, seed=41)
        basis = jordan_decompose(g)
        with pytest.raises(ValidationError, match="different basis"):
            igft(basis, Spectrum(np.zeros(5), "bogus"))

    def test_hermitian_basis_is_unitary(self):
        g = knn_similarity_graph(np.random.default_rng(0).random((12, 2)), 3)
        basis = jordan_decompose(g)
        n = g.n_nodes
        assert_allclose(basis.F @ basis.F.conj().T, np.eye(n), atol=1e-10)
        assert_allclose(basis.F, basis.V.conj().T, atol=1e-12)


class TestFrequencyResponse:
    def test_identity_taps_give_jordan_matrix(self):
        g, _ = planted_jordan_graph([(1.0, 2), (4.0, 1)], seed=2)
        basis = jordan_decompose(g, backend="exact")
        hj = frequency_response(Polynomial([0, 1]), basis)
        assert_allclose(hj, basis.jordan_matrix(), atol=1e-12)

    def test_diagonalizable_squares_eigenvalues(self):
        g = random_digraph(5, seed=51)
        basis = jordan_decompose(g)
        hj = frequency_response(Polynomial([0, 0, 1]), basis)
        diag = np.zeros(5, dtype=complex)
        for m, offset, r in basis.block_layout():
            diag[offset:offset + r] = basis.eigenvalues[m] ** 2
        assert_allclose(hj, np.diag(diag), atol=1e-12)

    def test_defective_block_upper_triangle(self):
        g = Graph.from_adjacency(np.array([[3.0, 1.0], [0.0, 3.0]]))
        basis = jordan_decompose(g, backend="exact")
        hj = frequency_response(Polynomial([0, 0, 1]), basis)
        assert_allclose(hj, [[9, 6], [0, 9]], atol=1e-12)


class TestSpectralFilter:
    def test_constant_filter_is_identity(self):
        g = random_digraph(6, seed=61)
        basis = jordan_decompose(g)
        rng = np.random.default_rng(61)
        s = g.signal(rng.standard_normal(6))
        out = spectral_filter(basis, Polynomial([1.0]), s)
        assert_allclose(out.values, s.values, atol=1e-9 * basis.cond_V)

    def test_tap_x_equals_graph_shift(self):
        g = cycle_graph(8)
        basis = jordan_decompose(g)
        rng = np.random.default_rng(8)
        s = g.signal(rng.standard_normal(8))
        out = spectral_filter(basis, Polynomial([0, 1]), s)
        oracle = graph_shift(g, s)
        assert_allclose(out.values, oracle.values, atol=1e-10)

    @pytest.mark.parametrize("seed", [71, 72])
    def test_matches_vertex_domain_filtering(self, seed):
        g = random_digraph(6, seed=seed)
        basis = jordan_decompose(g)
        rng = np.random.default_rng(seed)
        taps = Polynomial(rng.standard_normal(4))
        s = g.signal(rng.standard_normal(6))
        lhs = spectral_filter(basis, taps, s)
        rhs = apply_filter(g, make_filter(g, taps), s)
        scale = max(1.0, float(np.linalg.norm(rhs.values)))
        assert np.linalg.norm(lhs.values - rhs.values) <= 1e-9 * basis.cond_V * scale


class TestInvariants:
    @pytest.mark.parametrize("seed", [81, 82, 83])
    def test_convolution_theorem(self, seed):
        g = random_digraph(7, seed=seed)
        basis = jordan_decompose(g)
        rng = np.random.default_rng(seed)
        taps = Polynomial(rng.standard_normal(5))
        s = g.signal(rng.standard_normal(7) + 1j * rng.standard_normal(7))
        filtered = apply_filter(g, make_filter(g, taps), s)
        lhs = basis.F @ filtered.values
        rhs = frequency_response(taps, basis) @ (basis.F @ s.values)
        scale = max(1.0, float(np.linalg.norm(rhs)))
        assert np.linalg.norm(lhs - rhs) <= 1e-9 * basis.cond_V * scale

    def test_chain_subspace_shift_coordinates_exact(self):
        # shifting a signal supported on one chain block acts as the Jordan
        # block on its coordinates: exact-backend check, exact equality
        from graphdsp import exact
        from graphdsp.exact import GaussianRational as GR

        g, _ = planted_jordan_graph([(2.0, 3), (1.0, 1)], seed=13)
        basis = jordan_decompose(g, backend="exact")
        a = exact.exact_matrix(g.dense())
        offset, = [off for m, off, r in basis.block_layout() if r == 3]
        coords = [GR(3), GR(-1), GR(2)]  # spectrum on the size-3 chain of 2
        chain_cols = basis.V_exact[:, offset:offset + 3]
        s = chain_cols.dot(np.array(coords, dtype=object))
        shifted = a.dot(s)
        new_coords = basis.F_exact.dot(shifted)
        lam = GR(2)
        expected = [
            lam * coords[0] + coords[1],
            lam * coords[1] + coords[2],
            lam * coords[2],
        ]
        assert [new_coords[offset + i] for i in range(3)] == expected
        outside = [i for i in range(4) if not offset <= i < offset + 3]
        assert all(new_coords[i].is_zero for i in outside)

    @pytest.mark.parametrize("seed", [91, 92])
    def test_chain_dimensions_sum_to_n_and_v_invertible(self, seed):
        g = random_digraph(6, seed=seed)
        basis = jordan_decompose(g)
        assert sum(basis.algebraic_multiplicities) == 6
        assert np.linalg.matrix_rank(basis.V) == 6
