"""Jordan decomposition of the shift, graph Fourier transform, and
spectral-domain filtering.

Numeric Jordan structure detection is ill-posed, so the policy is strict:
Hermitian shifts go through a symmetric eigensolver (unitary basis), general
numeric shifts must be diagonalizable after eigenvalue clustering, and
anything defective requires the exact Gaussian-rational backend (or an
explicit override). A wrong Jordan structure is never reported silently: the
chain relations are verified before a basis is returned.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .errors import DecompositionError, ValidationError
from .exact import GaussianRational, IndependenceTracker
from .graph import Graph, GraphSignal, check_signal
from .polynomial import Polynomial, char_poly, eval_on_jordan_block
from .tolerances import Tolerances, resolve

#: numeric backend size ceiling (diagonalizable path)
MAX_NUMERIC_NODES = 4096
#: exact / defective path size ceiling
MAX_EXACT_NODES = 64

_SNAP_DENOMINATORS = (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64,
                      100, 1000, 10**4, 10**6, 10**9)


@dataclass(frozen=True)
class SpectralBasis:
    """Jordan structure of a shift plus the change-of-basis matrices.

    ``eigenvalues`` are the M distinct eigenvalues sorted lexicographically by
    (re, im); ``chains[m]`` lists the Jordan chain lengths of eigenvalue m in
    decreasing order. ``V`` holds generalized eigenvectors column-blocked in
    that order and ``F = V^{-1}`` is the graph Fourier transform matrix.
    """

    n_nodes: int
    graph_id: str
    eigenvalues: tuple
    chains: tuple
    V: np.ndarray
    F: np.ndarray
    backend_tag: str
    cond_V: float
    eigenvalues_exact: tuple | None = None
    V_exact: np.ndarray | None = None
    F_exact: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.V, dtype=np.complex128).copy()
        f = np.asarray(self.F, dtype=np.complex128).copy()
        v.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "V", v)
        object.__setattr__(self, "F", f)
        object.__setattr__(self, "eigenvalues", tuple(complex(x) for x in self.eigenvalues))
        object.__setattr__(self, "chains", tuple(tuple(int(r) for r in c) for c in self.chains))

    # -- structure queries ----------------------------------------------------
    @property
    def n_distinct(self) -> int:
        return len(self.eigenvalues)

    @property
    def algebraic_multiplicities(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in self.chains)

    @property
    def geometric_multiplicities(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.chains)

    @property
    def min_poly_degree(self) -> int:
        """N_A = sum of the longest chain length per eigenvalue."""
        return sum(max(c) for c in self.chains)

    @property
    def is_diagonalizable(self) -> bool:
        return all(r == 1 for c in self.chains for r in c)

    @property
    def is_nonderogatory(self) -> bool:
        """True iff p = m, i.e. every eigenvalue has exactly one chain."""
        return all(len(c) == 1 for c in self.chains)

    def block_layout(self) -> list[tuple[int, int, int]]:
        """(eigenvalue index, column offset, block size) per Jordan block."""
        layout = []
        offset = 0
        for m, chain_lengths in enumerate(self.chains):
            for r in chain_lengths:
                layout.append((m, offset, r))
                offset += r
        return layout

    def jordan_matrix(self) -> np.ndarray:
        j = np.zeros((self.n_nodes, self.n_nodes), dtype=np.complex128)
        for m, offset, r in self.block_layout():
            lam = self.eigenvalues[m]
            for i in range(r):
                j[offset + i, offset + i] = lam
                if i + 1 < r:
                    j[offset + i, offset + i + 1] = 1.0
        return j

    def jordan_matrix_exact(self) -> np.ndarray:
        if self.eigenvalues_exact is None:
            raise ValidationError("no exact payload on this basis")
        j = exact.exact_zeros((self.n_nodes, self.n_nodes))
        for m, offset, r in self.block_layout():
            lam = self.eigenvalues_exact[m]
            for i in range(r):
                j[offset + i, offset + i] = lam
                if i + 1 < r:
                    j[offset + i, offset + i + 1] = GaussianRational(1)
        return j

    @property
    def basis_id(self) -> str:
        h = hashlib.sha256()
        h.update(self.graph_id.encode())
        h.update(self.backend_tag.encode())
        h.update(np.asarray(self.eigenvalues, dtype=np.complex128).tobytes())
        h.update(repr(self.chains).encode())
        h.update(self.V.tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class Spectrum:
    """Expansion coefficients of a signal in the graph Fourier basis."""

    coeffs: np.ndarray
    basis_id: str

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128).reshape(-1).copy()
        if not np.all(np.isfinite(c)):
            raise ValidationError("spectrum coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __len__(self):
        return self.coeffs.shape[0]


# -- eigenvalue clustering -----------------------------------------------------

def _cluster_eigenvalues(vals: np.ndarray, tol_cluster: float) -> list[list[int]]:
    """Single-linkage clusters of eigenvalues within tol_cluster * scale."""
    n = len(vals)
    scale = max(1.0, float(np.max(np.abs(vals))) if n else 1.0)
    thr = tol_cluster * scale
    order = sorted(range(n), key=lambda i: (vals[i].real, vals[i].imag))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    # only pairs whose real parts are within thr can be linked
    for a in range(n):
        i = order[a]
        for b in range(a + 1, n):
            j = order[b]
            if vals[j].real - vals[i].real > thr:
                break
            if abs(vals[i] - vals[j]) <= thr:
                union(i, j)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = list(groups.values())
    clusters.sort(key=lambda idx: (np.mean(vals[idx]).real, np.mean(vals[idx]).imag))
    return clusters


def _canonical_phase(col: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude entry is positive real (deterministic)."""
    i = int(np.argmax(np.abs(col)))
    pivot = col[i]
    if pivot == 0:
        return col
    return col * (abs(pivot) / pivot)


# -- public operations ---------------------------------------------------------

def jordan_decompose(
    g: Graph,
    backend: str = "numeric",
    tol_cluster: float | None = None,
    eigenvalues: Sequence | None = None,
    allow_defective_numeric: bool = False,
    tol: Tolerances | None = None,
    max_numeric: int = MAX_NUMERIC_NODES,
    max_exact: int = MAX_EXACT_NODES,
) -> SpectralBasis:
    """Decompose the shift into its Jordan structure.

    backend="numeric" (default): Hermitian shifts use a symmetric eigensolver
    (unitary basis, F = V^H); general shifts must be diagonalizable after
    clustering unless ``allow_defective_numeric`` opts into the SVD staircase.
    backend="exact": Gaussian-rational staircase; eigenvalues are taken from
    ``eigenvalues`` or snapped to small rationals and verified as exact roots
    of the characteristic polynomial.
    """
    tol = resolve(tol)
    tol_cluster = tol.cluster if tol_cluster is None else float(tol_cluster)
    n = g.n_nodes
    if backend == "exact":
        if n > max_exact:
            raise ValidationError(
                f"exact backend limited to N <= {max_exact} (got {n})"
            )
        return _decompose_exact(g, tol_cluster, eigenvalues, tol)
    if backend != "numeric":
        raise ValidationError(f"unknown backend {backend!r}")
    if n > max_numeric:
        raise ValidationError(
            f"numeric backend limited to N <= {max_numeric} (got {n})"
        )
    return _decompose_numeric(g, tol_cluster, allow_defective_numeric, tol, max_exact)


def _assemble_and_validate(
    g: Graph,
    distinct,
    chains,
    columns,
    backend_tag: str,
    tol: Tolerances,
    exact_payload=None,
) -> SpectralBasis:
    n = g.n_nodes
    v = np.column_stack(columns) if columns else np.zeros((n, 0))
    if v.shape != (n, n):
        raise DecompositionError(
            "generalized eigenvectors do not span the space",
            {"columns": v.shape[1], "n": n},
        )
    try:
        f = np.linalg.solve(v, np.eye(n, dtype=np.complex128))
    except np.linalg.LinAlgError as e:
        raise DecompositionError(f"V is numerically singular: {e}") from e
    cond_v = float(np.linalg.norm(v, 1) * np.linalg.norm(f, 1))
    basis = SpectralBasis(
        n_nodes=n,
        graph_id=g.fingerprint,
        eigenvalues=tuple(distinct),
        chains=tuple(tuple(c) for c in chains),
        V=v,
        F=f,
        backend_tag=backend_tag,
        cond_V=cond_v,
        eigenvalues_exact=None if exact_payload is None else tuple(exact_payload[0]),
        V_exact=None if exact_payload is None else exact_payload[1],
        F_exact=None if exact_payload is None else exact_payload[2],
    )
    _validate_basis(g, basis, tol)
    return basis


def _validate_basis(g: Graph, basis: SpectralBasis, tol: Tolerances) -> None:
    a = g.dense()
    n = g.n_nodes
    norm_a = max(float(np.linalg.norm(a)), 1e-300)
    j = basis.jordan_matrix()
    if n <= 1024:
        cols = np.arange(n)
    else:  # sample columns deterministically on very large graphs
        cols = np.unique(np.linspace(0, n - 1, 64).astype(int))
    resid = a @ basis.V[:, cols] - basis.V @ j[:, cols]
    worst_chain = float(np.max(np.abs(resid))) if resid.size else 0.0
    fv = basis.F[cols] @ basis.V[:, cols]
    worst_inv = float(np.max(np.abs(fv - np.eye(len(cols)))))
    recon = a[:, cols] - basis.V @ (j @ basis.F[:, cols])
    worst_recon = float(np.linalg.norm(recon))
    if worst_chain > tol.chain * norm_a:
        raise DecompositionError(
            "Jordan chain residual exceeds tolerance; the numeric structure is "
            "not certifiable (try backend='exact')",
            {"chain_residual": worst_chain, "limit": tol.chain * norm_a},
        )
    if worst_inv > 1e-10 * max(basis.cond_V, 1.0):
        raise DecompositionError(
            "F V deviates from the identity beyond tolerance",
            {"inverse_residual": worst_inv, "cond_V": basis.cond_V},
        )
    if worst_recon > tol.chain * norm_a:
        raise DecompositionError(
            "reconstruction V J V^{-1} deviates from the shift beyond tolerance; "
            "the reported structure is not certifiable (try backend='exact' or, "
            "for a known perturbation scale, a matching tol_cluster)",
            {"reconstruction_residual": worst_recon, "limit": tol.chain * norm_a},
        )


# -- numeric backend -----------------------------------------------------------

def _decompose_numeric(
    g: Graph,
    tol_cluster: float,
    allow_defective: bool,
    tol: Tolerances,
    max_exact: int,
) -> SpectralBasis:
    a = g.dense()
    n = g.n_nodes
    if g.is_hermitian():
        w, x = np.linalg.eigh(a)
        vals = w.astype(np.complex128)
        clusters = _cluster_eigenvalues(vals, tol_cluster)
        distinct, chains, columns = [], [], []
        for idx in clusters:
            distinct.append(complex(np.mean(vals[idx])))
            chains.append([1] * len(idx))
            for i in idx:
                columns.append(_canonical_phase(x[:, i]))
        v = np.column_stack(columns)
        f = v.conj().T
        basis = SpectralBasis(
            n_nodes=n,
            graph_id=g.fingerprint,
            eigenvalues=tuple(distinct),
            chains=tuple(tuple(c) for c in chains),
            V=v,
            F=f,
            backend_tag="numeric",
            cond_V=float(np.linalg.norm(v, 1) * np.linalg.norm(f, 1)),
        )
        _validate_basis(g, basis, tol)
        return basis

    w, x = np.linalg.eig(a)
    clusters = _cluster_eigenvalues(w, tol_cluster)
    sigma_max = max(float(np.linalg.norm(a, 2)), 1e-300)
    rank_thr = tol_cluster * sigma_max
    per_cluster = []  # (mu, size, chain_lengths | None, cols | None)
    defective = []
    for idx in clusters:
        mu = complex(np.mean(w[idx]))
        k = len(idx)
        if k == 1:
            col = x[:, idx[0]]
            col = _canonical_phase(col / np.linalg.norm(col))
            per_cluster.append((mu, 1, [1], [col]))
            continue
        ns = _orthonormal_nullspace(a - mu * np.eye(n), rank_thr)
        if ns.shape[1] >= k:
            cols = [_canonical_phase(ns[:, i]) for i in range(k)]
            per_cluster.append((mu, k, [1] * k, cols))
        else:
            defective.append((mu, k, ns.shape[1]))
            per_cluster.append((mu, k, None, None))

    if defective and not allow_defective:
        detail = ", ".join(
            f"{mu:.6g} (multiplicity {k}, only {nl} eigenvectors)"
            for mu, k, nl in defective
        )
        raise DecompositionError(
            f"shift is defective ({detail}); its numeric Jordan structure is "
            "not certifiable. Use backend='exact' or pass "
            "allow_defective_numeric=True",
            {"defective_clusters": defective},
        )

    distinct, chains, columns = [], [], []
    for mu, k, chain_lengths, cols in per_cluster:
        if chain_lengths is None:
            chain_lengths, cols = _numeric_staircase(a, mu, k, tol_cluster)
        distinct.append(mu)
        chains.append(chain_lengths)
        columns.extend(cols)
    return _assemble_and_validate(g, distinct, chains, columns, "numeric", tol)


def _orthonormal_nullspace(mat: np.ndarray, thr: float) -> np.ndarray:
    _, sv, vh = np.linalg.svd(mat)
    nullity = int(np.sum(sv <= thr))
    if nullity == 0:
        return np.zeros((mat.shape[1], 0), dtype=np.complex128)
    return vh.conj().T[:, mat.shape[1] - nullity:]


def _numeric_staircase(a, mu, mult, rel_tol):
    """Generalized eigenvectors for one defective cluster via SVD nullspaces.

    Best effort: rank decisions use a relative singular-value threshold per
    power, the kernel dimension is capped by the algebraic multiplicity, and
    the final basis is still validated against the chain relations, so an
    unreliable staircase surfaces as a DecompositionError rather than a
    silently wrong structure.
    """
    n = a.shape[0]
    b = a - mu * np.eye(n)
    kernels = [np.zeros((n, 0), dtype=np.complex128)]
    power = np.eye(n, dtype=np.complex128)
    dims = [0]
    while dims[-1] < mult:
        power = power @ b
        thr = rel_tol * max(float(np.linalg.norm(power, 2)), 1e-300)
        ker = _orthonormal_nullspace(power, thr)
        if ker.shape[1] > mult:  # junk directions: keep the smallest-sigma ones
            ker = ker[:, ker.shape[1] - mult:]
        if ker.shape[1] <= dims[-1]:
            raise DecompositionError(
                f"kernel growth stalled for eigenvalue {mu:.6g}; numeric "
                "staircase failed (try backend='exact')",
                {"eigenvalue": mu, "dims": dims},
            )
        kernels.append(ker)
        dims.append(ker.shape[1])
    height = len(dims) - 1

    def pick_independent(candidates, base_vectors, count):
        """Orthonormal residuals of candidates against span(base_vectors).

        Returning the residual (not the raw candidate) keeps new chain tops
        orthogonal to the lower kernels, which keeps chain vectors well-sized.
        """
        q_list = []
        for vec in base_vectors:
            v = vec.astype(np.complex128).copy()
            for q in q_list:
                v -= q * (np.conj(q) @ v)
            nv = float(np.linalg.norm(v))
            if nv > 1e-12:
                q_list.append(v / nv)
        picked = []
        for cand in candidates.T:
            if len(picked) == count:
                break
            v = cand.copy()
            for q in q_list:
                v -= q * (np.conj(q) @ v)
            nv = float(np.linalg.norm(v))
            if nv > 1e-8:
                q_list.append(v / nv)
                picked.append(v / nv)
        if len(picked) != count:
            raise DecompositionError(
                f"could not extend Jordan chains for eigenvalue {mu:.6g}",
                {"eigenvalue": mu},
            )
        return picked

    tops: list[tuple[np.ndarray, int]] = []
    for j in range(height, 0, -1):
        required = dims[j] - dims[j - 1]
        descents = []
        for vec, ht in tops:
            if ht > j:
                d = vec
                for _ in range(ht - j):
                    d = b @ d
                descents.append(d)
        need_new = required - len(descents)
        if need_new < 0:
            raise DecompositionError(
                f"inconsistent kernel dimensions for eigenvalue {mu:.6g}",
                {"dims": dims},
            )
        if need_new:
            base = [kernels[j - 1][:, i] for i in range(kernels[j - 1].shape[1])]
            base += descents
            new = pick_independent(kernels[j], base, need_new)
            tops.extend((v, j) for v in new)

    chain_lengths, chain_cols = [], []
    for vec, ht in tops:  # discovered in decreasing height order
        chain = [vec]
        for _ in range(ht - 1):
            chain.append(b @ chain[-1])
        chain.reverse()  # eigenvector first, per the chain relation
        # one scalar of freedom per chain: bound the largest member by 1,
        # then rotate so the eigenvector's biggest entry is positive real
        scale = max(float(np.linalg.norm(c)) for c in chain)
        pivot = chain[0][int(np.argmax(np.abs(chain[0])))]
        phase = abs(pivot) / pivot if pivot != 0 else 1.0
        chain = [c * (phase / scale) for c in chain]
        chain_lengths.append(ht)
        chain_cols.extend(chain)
    return chain_lengths, chain_cols


# -- exact backend ---------------------------------------------------------------

def _snap_eigenvalue(p_exact: Polynomial, mu: complex, scale: float) -> GaussianRational | None:
    for den in _SNAP_DENOMINATORS:
        cand = GaussianRational(
            Fraction(mu.real).limit_denominator(den),
            Fraction(mu.imag).limit_denominator(den),
        )
        if abs(complex(cand) - mu) > max(1e-3 * scale, 1e-12):
            continue
        if p_exact(cand).is_zero:
            return cand
    return None


def _decompose_exact(
    g: Graph,
    tol_cluster: float,
    provided: Sequence | None,
    tol: Tolerances,
) -> SpectralBasis:
    a_num = g.dense()
    n = g.n_nodes
    a = exact.exact_matrix(a_num)
    p = char_poly(a, backend="exact")

    candidates: list[GaussianRational] = []
    if provided is not None:
        for lam in provided:
            candidates.append(exact.as_exact_scalar(lam))
    else:
        w = np.linalg.eigvals(a_num)
        scale = max(1.0, float(np.max(np.abs(w))) if len(w) else 1.0)
        for idx in _cluster_eigenvalues(w, tol_cluster):
            mu = complex(np.mean(w[idx]))
            snapped = _snap_eigenvalue(p, mu, scale)
            if snapped is None:
                raise DecompositionError(
                    f"eigenvalue near {mu:.12g} is not a small Gaussian rational; "
                    "pass eigenvalues=[...] or use the numeric backend",
                    {"eigenvalue": mu},
                )
            candidates.append(snapped)

    # dedupe exactly, then find algebraic multiplicities by exact division
    distinct: list[GaussianRational] = []
    for lam in candidates:
        if not any(lam == d for d in distinct):
            distinct.append(lam)
    distinct.sort(key=lambda z: z.sort_key())

    mults = []
    for lam in distinct:
        if not p(lam).is_zero:
            raise DecompositionError(
                f"provided eigenvalue {complex(lam)} is not a root of the "
                "characteristic polynomial"
            )
        factor = Polynomial([-lam, GaussianRational(1)])
        count, q = 0, p
        while True:
            quot, rem = divmod(q, factor)
            if not rem.is_zero:
                break
            count += 1
            q = quot
        mults.append(count)
    if sum(mults) != n:
        raise DecompositionError(
            f"eigenvalue multiplicities sum to {sum(mults)} != N={n}; "
            "some eigenvalues are missing (pass eigenvalues=[...])",
            {"found": [complex(d) for d in distinct]},
        )

    chains, columns_exact = [], []
    for lam, mult in zip(distinct, mults):
        chain_lengths, chain_cols = _exact_staircase(a, lam, mult)
        chains.append(chain_lengths)
        columns_exact.extend(chain_cols)

    v_exact = np.column_stack(columns_exact)
    f_exact = exact.solve(v_exact, exact.exact_eye(n))
    j_exact = _jordan_exact_from(distinct, chains, n)
    if not _exact_equal(a.dot(v_exact), v_exact.dot(j_exact)):
        raise DecompositionError("exact chain relations failed (internal error)")
    columns = [exact.to_complex_matrix(c.reshape(-1, 1)).reshape(-1) for c in columns_exact]
    return _assemble_and_validate(
        g,
        [complex(d) for d in distinct],
        chains,
        columns,
        "exact",
        tol,
        exact_payload=(distinct, v_exact, f_exact),
    )


def _jordan_exact_from(distinct, chains, n):
    j = exact.exact_zeros((n, n))
    offset = 0
    for lam, chain_lengths in zip(distinct, chains):
        for r in chain_lengths:
            for i in range(r):
                j[offset + i, offset + i] = lam
                if i + 1 < r:
                    j[offset + i, offset + i + 1] = GaussianRational(1)
            offset += r
    return j


def _exact_equal(x: np.ndarray, y: np.ndarray) -> bool:
    return all((a - b).is_zero for a, b in zip(x.reshape(-1), y.reshape(-1)))


def _exact_staircase(a: np.ndarray, lam: GaussianRational, mult: int):
    """Jordan chains of eigenvalue lam over Q(i) via exact kernel staircase."""
    n = a.shape[0]
    b = a - lam * exact.exact_eye(a.shape[0])
    kernels = [[]]
    power = exact.exact_eye(n)
    dims = [0]
    while dims[-1] < mult:
        power = power.dot(b)
        ker = exact.nullspace(power)
        if len(ker) <= dims[-1]:
            raise DecompositionError(
                f"exact kernel growth stalled for eigenvalue {complex(lam)}; "
                "multiplicity bookkeeping is inconsistent"
            )
        kernels.append(ker)
        dims.append(len(ker))
    height = len(dims) - 1

    tops: list[tuple[np.ndarray, int]] = []
    for j in range(height, 0, -1):
        required = dims[j] - dims[j - 1]
        descents = []
        for vec, ht in tops:
            if ht > j:
                d = vec
                for _ in range(ht - j):
                    d = b.dot(d)
                descents.append(d)
        need_new = required - len(descents)
        if need_new < 0:
            raise DecompositionError("inconsistent exact kernel dimensions")
        if need_new:
            tracker = IndependenceTracker(n, seed=list(kernels[j - 1]) + descents)
            added = 0
            for cand in kernels[j]:
                if added == need_new:
                    break
                if tracker.add(cand):
                    tops.append((cand, j))
                    added += 1
            if added != need_new:
                raise DecompositionError(
                    f"could not extend exact Jordan chains for {complex(lam)}"
                )

    chain_lengths, chain_cols = [], []
    for vec, ht in tops:
        chain = [vec]
        for _ in range(ht - 1):
            chain.append(b.dot(chain[-1]))
        chain.reverse()
        chain_lengths.append(ht)
        chain_cols.extend(chain)
    return chain_lengths, chain_cols


# -- transforms -----------------------------------------------------------------

def gft(basis: SpectralBasis, s: GraphSignal) -> Spectrum:
    """Graph Fourier transform: expansion coefficients F s."""
    if len(s) != basis.n_nodes:
        raise ValidationError("signal length does not match the basis")
    if s.graph_id and s.graph_id != basis.graph_id:
        raise ValidationError("signal is indexed by a different graph than the basis")
    return Spectrum(basis.F @ s.values, basis.basis_id)


def igft(basis: SpectralBasis, spec: Spectrum) -> GraphSignal:
    """Inverse transform: reconstructs the signal as V s_hat."""
    if len(spec) != basis.n_nodes:
        raise ValidationError("spectrum length does not match the basis")
    if spec.basis_id and spec.basis_id != basis.basis_id:
        raise ValidationError("spectrum belongs to a different basis")
    return GraphSignal(basis.V @ spec.coeffs, basis.graph_id)


def frequency_response(h: Polynomial, basis: SpectralBasis) -> np.ndarray:
    """h(J): block-diagonal action of the filter on the spectrum."""
    n = basis.n_nodes
    out = np.zeros((n, n), dtype=np.complex128)
    for m, offset, r in basis.block_layout():
        block = eval_on_jordan_block(h.to_complex(), basis.eigenvalues[m], r)
        out[offset:offset + r, offset:offset + r] = block
    return out


def spectral_filter(basis: SpectralBasis, h: Polynomial, s: GraphSignal) -> GraphSignal:
    """Filter in the spectral domain: igft(h(J) gft(s))."""
    spec = gft(basis, s)
    coeffs = spec.coeffs.copy()
    for m, offset, r in basis.block_layout():
        block = eval_on_jordan_block(h.to_complex(), basis.eigenvalues[m], r)
        coeffs[offset:offset + r] = block @ spec.coeffs[offset:offset + r]
    return igft(basis, Spectrum(coeffs, basis.basis_id))
