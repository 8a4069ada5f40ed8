"""Graph filters as tap vectors: application, reduction, inversion, impulse
response, equivalent shifts, and the graph z-transform basis.

A filter is a polynomial in the shift; it is applied by Horner's scheme with
exactly deg(h) shift applications and never materializes h(A). That keeps the
cost at O(L * nnz(A)) and is the performance core of the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .errors import (
    NotInvertibleError,
    NumericalError,
    TapsRecoveryError,
    ValidationError,
)
from .exact import GaussianRational
from .graph import Graph, GraphSignal, check_signal
from .polynomial import (
    HermiteConstraint,
    Polynomial,
    hermite_interpolate,
)
from .spectral import SpectralBasis, jordan_decompose
from .tolerances import Tolerances, resolve


@dataclass(frozen=True)
class GraphFilter:
    """Tap polynomial h bound to the graph whose shift it acts through."""

    taps: Polynomial
    graph_id: str

    def __post_init__(self):
        if not isinstance(self.taps, Polynomial):
            object.__setattr__(self, "taps", Polynomial(self.taps))

    @property
    def n_taps(self) -> int:
        return len(self.taps.coeffs)


def make_filter(g: Graph, taps) -> GraphFilter:
    """Bind taps (a Polynomial or coefficient sequence) to a graph."""
    taps = taps if isinstance(taps, Polynomial) else Polynomial(taps)
    return GraphFilter(taps, g.fingerprint)


def _check_filter(g: Graph, f: GraphFilter) -> None:
    if f.graph_id and f.graph_id != g.fingerprint:
        raise ValidationError("filter was built for a different graph")


def apply_filter(g: Graph, f: GraphFilter, s: GraphSignal) -> GraphSignal:
    """h(A) s by Horner: h0 s + A (h1 s + A (h2 s + ...))."""
    _check_filter(g, f)
    check_signal(g, s)
    coeffs = f.taps.coeffs_complex()
    if coeffs.size == 0:
        return GraphSignal(np.zeros(g.n_nodes, dtype=np.complex128), g.fingerprint)
    acc = coeffs[-1] * s.values
    for c in coeffs[-2::-1]:
        acc = g.adjacency @ acc + c * s.values
    return GraphSignal(acc, g.fingerprint)


def is_shift_invariant(g: Graph, h_matrix, tol: float | None = None) -> bool:
    """True iff the commutator ||A H - H A|| <= tol ||A|| ||H|| (Frobenius)."""
    tol = resolve(None).shift_invariance if tol is None else float(tol)
    h = np.asarray(h_matrix, dtype=np.complex128)
    n = g.n_nodes
    if h.shape != (n, n):
        raise ValidationError(f"expected a {n}x{n} matrix")
    a = g.dense()
    comm = a @ h - h @ a
    return float(np.linalg.norm(comm)) <= tol * float(np.linalg.norm(a)) * float(
        np.linalg.norm(h)
    )


def reduce_filter(f: GraphFilter, m: Polynomial) -> GraphFilter:
    """Equivalent filter with taps h mod m, m the shift's minimal polynomial."""
    if m.is_zero:
        raise ValidationError("cannot reduce modulo the zero polynomial")
    return GraphFilter(f.taps % m, f.graph_id)


def _check_invertible(h: Polynomial, basis: SpectralBasis, tol: Tolerances):
    """h(lambda) at every distinct eigenvalue, or NotInvertibleError."""
    coeffs = h.coeffs_complex()
    scale = float(np.linalg.norm(coeffs)) if coeffs.size else 0.0
    if scale == 0.0:
        raise NotInvertibleError("the zero filter is not invertible")
    eigs = basis.eigenvalues_exact or basis.eigenvalues
    values = []
    for lam in eigs:
        val = h(lam)
        if abs(complex(val)) <= tol.inv * scale:
            raise NotInvertibleError(
                f"filter vanishes at eigenvalue {complex(lam):.12g}; not invertible",
                eigenvalue=complex(lam),
            )
        values.append(val)
    return eigs, values


def invert_filter(f: GraphFilter, basis: SpectralBasis, tol: Tolerances | None = None) -> GraphFilter:
    """Tap polynomial g with g(A) h(A) = I, degree < N_A.

    At every distinct eigenvalue the derivatives of g up to the chain index
    are obtained from (h g) = 1 by a triangular Leibniz solve, then g is the
    Hermite interpolant of those constraints.
    """
    tol = resolve(tol)
    if basis.graph_id != f.graph_id:
        raise ValidationError("basis and filter belong to different graphs")
    h = f.taps
    eigs, _ = _check_invertible(h, basis, tol)
    use_exact = h.is_exact and basis.eigenvalues_exact is not None
    constraints = []
    for m_idx, lam in enumerate(eigs):
        order = max(basis.chains[m_idx])
        point = lam if use_exact else complex(lam)
        h_derivs = [h.derivative(k)(point) for k in range(order)]
        g_derivs = [
            (GaussianRational(1) if use_exact else 1.0 + 0j) / h_derivs[0]
        ]
        for i in range(1, order):
            acc = h_derivs[0] * 0
            for k in range(1, i + 1):
                acc = acc + math.comb(i, k) * h_derivs[k] * g_derivs[i - k]
            g_derivs.append(-acc / h_derivs[0])
        constraints.append(HermiteConstraint(point, tuple(g_derivs)))
    g_poly = hermite_interpolate(constraints, tol=tol)
    return GraphFilter(g_poly, f.graph_id)


def impulse_response(g: Graph, f: GraphFilter) -> GraphSignal:
    """Filter output for the unit impulse at node 0."""
    delta = np.zeros(g.n_nodes, dtype=np.complex128)
    delta[0] = 1.0
    return apply_filter(g, f, GraphSignal(delta, g.fingerprint))


def _krylov_columns(g: Graph, count: int, start: np.ndarray) -> np.ndarray:
    cols = np.zeros((g.n_nodes, count), dtype=np.complex128)
    vec = start.astype(np.complex128)
    for k in range(count):
        cols[:, k] = vec
        if k + 1 < count:
            vec = g.adjacency @ vec
    return cols


def _numeric_rank(mat: np.ndarray, rel_tol: float) -> int:
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))


def _estimate_min_poly_degree(g: Graph, tol: Tolerances) -> int:
    """Degree of the minimal polynomial from Krylov ranks of seeded probes.

    A generic vector's Krylov space has dimension deg m_A; two fixed-seed
    probes make an unlucky probe astronomically unlikely.
    """
    n = g.n_nodes
    rng = np.random.default_rng(0xA5)
    best = 0
    for _ in range(2):
        probe = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        cols = _krylov_columns(g, n, probe)
        best = max(best, _numeric_rank(cols, tol.rank))
    return best


def taps_from_impulse(
    g: Graph,
    u: GraphSignal,
    n_min: int | None = None,
    tol: Tolerances | None = None,
) -> GraphFilter:
    """Recover the unique reduced taps from an impulse response.

    Solves (A^0 d, ..., A^{N_A - 1} d) h = u, where d is the unit impulse;
    fails with TapsRecoveryError when that matrix is rank deficient or u is
    not in its range.
    """
    tol = resolve(tol)
    check_signal(g, u)
    n_a = _estimate_min_poly_degree(g, tol) if n_min is None else int(n_min)
    n_a = max(n_a, 1)
    delta = np.zeros(g.n_nodes, dtype=np.complex128)
    delta[0] = 1.0
    krylov = _krylov_columns(g, n_a, delta)
    if _numeric_rank(krylov, tol.rank) < n_a:
        raise TapsRecoveryError(
            f"impulse Krylov matrix has rank < N_A = {n_a}; taps are not "
            "recoverable on this graph"
        )
    taps, *_ = np.linalg.lstsq(krylov, u.values, rcond=tol.rank)
    residual = float(np.linalg.norm(krylov @ taps - u.values))
    if residual > tol.solve * max(1.0, float(np.linalg.norm(u.values))):
        raise TapsRecoveryError(
            f"signal is not an attainable impulse response (residual {residual:.3e})"
        )
    return GraphFilter(Polynomial(taps), g.fingerprint)


def equivalent_shift(
    g: Graph,
    basis: SpectralBasis,
    tol: Tolerances | None = None,
) -> tuple[Graph, Polynomial]:
    """Shift A~ with p = m plus a polynomial r such that r(A~) = A.

    Substitute eigenvalues are spread deterministically per chain:
    lambda~ = lambda_m + d * eps * (1 + |lambda_m|), eps starting at
    1 / (4 max_m D_m) and halved until all substitutes stay pairwise
    separated. Each substitute keeps its chain's block size, so every
    substitute eigenvalue has exactly one chain.
    """
    tol = resolve(tol)
    if basis.graph_id != g.fingerprint:
        raise ValidationError("basis belongs to a different graph")
    if basis.is_nonderogatory:
        return g, Polynomial([0, 1])

    layout = basis.block_layout()
    max_geo = max(basis.geometric_multiplicities)
    eps = 1.0 / (4.0 * max_geo)
    scale = max(1.0, max(abs(lam) for lam in basis.eigenvalues))
    use_exact = basis.eigenvalues_exact is not None

    for _ in range(80):
        substitutes = []
        chain_index: dict[int, int] = {}
        for m, offset, r in layout:
            d = chain_index.get(m, 0)
            chain_index[m] = d + 1
            lam = basis.eigenvalues[m]
            shift = d * eps * (1.0 + abs(lam))
            if use_exact:
                # dyadic snap: keeps the substitute exactly float-representable
                dyadic = Fraction(round(shift * (1 << 20)), 1 << 20)
                lam_sub = basis.eigenvalues_exact[m] + GaussianRational(dyadic)
            else:
                lam_sub = lam + shift
            substitutes.append(lam_sub)
        sep = min(
            (
                abs(complex(substitutes[i]) - complex(substitutes[j]))
                for i in range(len(substitutes))
                for j in range(i + 1, len(substitutes))
            ),
            default=float("inf"),
        )
        if sep > tol.lambda_sep * scale:
            break
        eps /= 2.0
    else:
        raise NumericalError("could not separate substitute eigenvalues")

    constraints = []
    for (m, offset, r), lam_sub in zip(layout, substitutes):
        lam = (
            basis.eigenvalues_exact[m]
            if use_exact
            else basis.eigenvalues[m]
        )
        if r == 1:
            values = (lam,)
        else:
            one = GaussianRational(1) if use_exact else 1.0 + 0j
            zero = GaussianRational(0) if use_exact else 0j
            values = (lam, one) + (zero,) * (r - 2)
        constraints.append(HermiteConstraint(lam_sub, values))
    r_poly = hermite_interpolate(constraints, tol=tol)

    if use_exact:
        j_sub = exact.exact_zeros((g.n_nodes, g.n_nodes))
        for (m, offset, r), lam_sub in zip(layout, substitutes):
            for i in range(r):
                j_sub[offset + i, offset + i] = lam_sub
                if i + 1 < r:
                    j_sub[offset + i, offset + i + 1] = GaussianRational(1)
        a_sub = exact.to_complex_matrix(
            basis.V_exact.dot(j_sub).dot(basis.F_exact)
        )
    else:
        j_sub = np.zeros((g.n_nodes, g.n_nodes), dtype=np.complex128)
        for (m, offset, r), lam_sub in zip(layout, substitutes):
            for i in range(r):
                j_sub[offset + i, offset + i] = complex(lam_sub)
                if i + 1 < r:
                    j_sub[offset + i, offset + i + 1] = 1.0
        a_sub = basis.V @ j_sub @ basis.F
    g_sub = Graph.from_adjacency(a_sub, node_labels=g.node_labels)
    return g_sub, r_poly


def z_transform_basis(
    g: Graph,
    basis_of_transpose: SpectralBasis,
    tol: Tolerances | None = None,
) -> list[Polynomial]:
    """Basis polynomials b_0..b_{N-1} of the signal module (graph z-transform).

    Requires p = m. Component n of the generalized eigenvectors of A^T
    prescribes the derivatives of b_n at each eigenvalue:
    b_n^{(r)}(lambda_m) = r! * v~[n, (m, r)]. Filtering then becomes
    polynomial multiplication modulo the characteristic polynomial.
    """
    tol = resolve(tol)
    bt = basis_of_transpose
    if bt.graph_id != g.transpose().fingerprint:
        raise ValidationError(
            "expected the spectral basis of the transposed shift"
        )
    if not bt.is_nonderogatory:
        raise ValidationError(
            "graph z-transform needs p = m (one chain per eigenvalue); "
            "apply equivalent_shift first"
        )
    n = g.n_nodes
    use_exact = bt.V_exact is not None
    eigs = bt.eigenvalues_exact if use_exact else bt.eigenvalues
    v = bt.V_exact if use_exact else bt.V
    layout = bt.block_layout()
    polys = []
    for comp in range(n):
        constraints = []
        for m, offset, r in layout:
            values = []
            for k in range(r):
                fact = math.factorial(k)
                values.append(fact * v[comp, offset + k])
            constraints.append(HermiteConstraint(eigs[m], tuple(values)))
        polys.append(hermite_interpolate(constraints, tol=tol))
    return polys


def nonderogatory_basis(g: Graph, **kwargs) -> SpectralBasis:
    """Convenience: decompose and insist on p = m."""
    basis = jordan_decompose(g, **kwargs)
    if not basis.is_nonderogatory:
        raise ValidationError(
            "shift is derogatory (p != m); use equivalent_shift"
        )
    return basis
