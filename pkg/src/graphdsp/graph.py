"""Graph and signal data model, the graph shift, and graph construction.

Convention: ``adjacency[n, m]`` is the weight of the directed edge from node
m to node n, so the shift replaces each sample with a weighted combination of
its in-neighbors' samples. Edge tuples in the public API are ``(src, dst,
weight)`` and set ``adjacency[dst, src]``.

Graphs and signals are immutable after construction; every operation here is
a pure function and safe for concurrent reads.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.special import logsumexp

from .errors import ValidationError

#: node count above which adjacency is stored in sparse CSR form
DENSE_THRESHOLD = 2048

EDGE_HEADER_PREFIX = "graphdsp-edges v1 N="


def _format_float(x: float) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class Graph:
    """Weighted directed graph; the index structure for all signals."""

    n_nodes: int
    adjacency: object  # np.ndarray (dense) or scipy.sparse.csr_matrix
    node_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.n_nodes
        if n <= 0:
            raise ValidationError("a graph needs at least one node")
        a = self.adjacency
        if sp.issparse(a):
            a = a.tocsr().astype(np.complex128)
            if not np.all(np.isfinite(a.data)):
                raise ValidationError("adjacency weights must be finite")
        else:
            a = np.asarray(a, dtype=np.complex128)
            if not np.all(np.isfinite(a)):
                raise ValidationError("adjacency weights must be finite")
            a = a.copy()
            a.setflags(write=False)
        if a.shape != (n, n):
            raise ValidationError(f"adjacency must be {n}x{n}, got {a.shape}")
        object.__setattr__(self, "adjacency", a)
        if self.node_labels is not None:
            labels = tuple(str(x) for x in self.node_labels)
            if len(labels) != n:
                raise ValidationError("node_labels length must equal n_nodes")
            object.__setattr__(self, "node_labels", labels)

    @classmethod
    def from_adjacency(cls, matrix, node_labels=None,
                       dense_threshold: int = DENSE_THRESHOLD) -> "Graph":
        matrix = np.asarray(matrix, dtype=np.complex128)
        n = matrix.shape[0]
        if n > dense_threshold:
            matrix = sp.csr_matrix(matrix)
        return cls(n, matrix, node_labels)

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.adjacency)

    def dense(self) -> np.ndarray:
        if self.is_sparse:
            return self.adjacency.toarray()
        return np.asarray(self.adjacency)

    def neighborhood(self, n: int) -> np.ndarray:
        """Indices m with adjacency[n, m] != 0 (the in-neighbors feeding node n)."""
        if not 0 <= n < self.n_nodes:
            raise ValidationError(f"node index {n} out of range")
        if self.is_sparse:
            row = self.adjacency.getrow(n)
            return np.sort(row.indices[row.data != 0])
        return np.nonzero(self.adjacency[n])[0]

    def edges(self) -> list[tuple[int, int, complex]]:
        """Edge list as (src, dst, weight), sorted by (src, dst)."""
        if self.is_sparse:
            coo = self.adjacency.tocoo()
            items = [
                (int(m), int(n), complex(w))
                for n, m, w in zip(coo.row, coo.col, coo.data)
                if w != 0
            ]
        else:
            dst, src = np.nonzero(self.adjacency)
            items = [
                (int(m), int(n), complex(self.adjacency[n, m]))
                for n, m in zip(dst, src)
            ]
        items.sort(key=lambda e: (e[0], e[1]))
        return items

    def edge_lines(self) -> list[str]:
        """Canonical text serialization; also the fingerprint preimage."""
        lines = [f"{EDGE_HEADER_PREFIX}{self.n_nodes}"]
        for src, dst, w in self.edges():
            if w.imag == 0:
                lines.append(f"{src} {dst} {_format_float(w.real)}")
            else:
                lines.append(
                    f"{src} {dst} {_format_float(w.real)} {_format_float(w.imag)}"
                )
        return lines

    @cached_property
    def fingerprint(self) -> str:
        payload = "\n".join(self.edge_lines()).encode()
        return hashlib.sha256(payload).hexdigest()

    def signal(self, values) -> "GraphSignal":
        return GraphSignal.over(self, values)

    def transpose(self) -> "Graph":
        a = self.adjacency.T
        if self.is_sparse:
            a = a.tocsr()
        return Graph(self.n_nodes, a, self.node_labels)

    def is_hermitian(self) -> bool:
        a = self.dense()
        return bool(np.array_equal(a, a.conj().T))


@dataclass(frozen=True)
class GraphSignal:
    """Length-N complex vector whose element n is attached to node n."""

    values: np.ndarray
    graph_id: str = field(default="")

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128).reshape(-1).copy()
        if not np.all(np.isfinite(v)):
            raise ValidationError("signal values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def over(cls, g: Graph, values) -> "GraphSignal":
        v = np.asarray(values, dtype=np.complex128).reshape(-1)
        if v.shape[0] != g.n_nodes:
            raise ValidationError(
                f"signal length {v.shape[0]} does not match n_nodes {g.n_nodes}"
            )
        return cls(v, g.fingerprint)

    def __len__(self):
        return self.values.shape[0]

    def real(self) -> np.ndarray:
        return np.real(self.values)


def check_signal(g: Graph, s: GraphSignal) -> None:
    if len(s) != g.n_nodes:
        raise ValidationError("signal length does not match the graph")
    if s.graph_id and s.graph_id != g.fingerprint:
        raise ValidationError("signal is indexed by a different graph")


def build_graph(
    n_nodes: int,
    edges: Iterable[tuple[int, int, complex]],
    node_labels: Sequence[str] | None = None,
    dense_threshold: int = DENSE_THRESHOLD,
) -> Graph:
    """Graph from an edge list; edge (src, dst, w) sets adjacency[dst, src] = w."""
    edges = list(edges)
    seen: set[tuple[int, int]] = set()
    for src, dst, w in edges:
        if not (0 <= src < n_nodes and 0 <= dst < n_nodes):
            raise ValidationError(f"edge ({src}, {dst}) out of range for N={n_nodes}")
        if (src, dst) in seen:
            raise ValidationError(f"duplicate edge ({src}, {dst})")
        seen.add((src, dst))
        wc = complex(w)
        if not (np.isfinite(wc.real) and np.isfinite(wc.imag)):
            raise ValidationError(f"non-finite weight on edge ({src}, {dst})")
    if n_nodes > dense_threshold:
        rows = [dst for _, dst, _ in edges]
        cols = [src for src, _, _ in edges]
        data = [complex(w) for _, _, w in edges]
        a = sp.csr_matrix(
            (data, (rows, cols)), shape=(n_nodes, n_nodes), dtype=np.complex128
        )
    else:
        a = np.zeros((n_nodes, n_nodes), dtype=np.complex128)
        for src, dst, w in edges:
            a[dst, src] = w
    return Graph(n_nodes, a, tuple(node_labels) if node_labels else None)


def cycle_graph(n: int) -> Graph:
    """Directed cycle whose shift is the classical one-sample time delay."""
    return build_graph(n, [(k, (k + 1) % n, 1.0) for k in range(n)])


def path_graph(n: int) -> Graph:
    """Undirected unweighted path 0 - 1 - ... - (n-1)."""
    edges = []
    for k in range(n - 1):
        edges.append((k, k + 1, 1.0))
        edges.append((k + 1, k, 1.0))
    return build_graph(n, edges)


def graph_shift(g: Graph, s: GraphSignal) -> GraphSignal:
    """One application of the shift: output_n = sum_m adjacency[n, m] s_m."""
    check_signal(g, s)
    return GraphSignal(g.adjacency @ s.values, g.fingerprint)


def knn_similarity_graph(
    coords,
    k: int,
    metric: Callable[[np.ndarray, np.ndarray], float] | None = None,
    dense_threshold: int = DENSE_THRESHOLD,
) -> Graph:
    """Symmetric K-nearest-neighbor similarity graph.

    Each node is connected to its K nearest neighbors (ties broken by lower
    index), the relation is symmetrized by union, and the weights are
    normalized inverse exponentials of the squared distances:

        A[n, m] = exp(-d_nm^2) / sqrt(sum_k exp(-d_nk^2) * sum_l exp(-d_ml^2))

    with both sums over the symmetrized neighborhoods. Weights are evaluated
    in the log domain, so remote points do not underflow to 0/0.
    """
    pts = np.asarray(coords, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if k < 1:
        raise ValidationError("K must be at least 1")
    if k >= n:
        raise ValidationError(f"K={k} requires at least K+1={k + 1} points, got {n}")
    if metric is None:
        diff = pts[:, None, :] - pts[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
    else:
        d2 = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                d = float(metric(pts[i], pts[j]))
                d2[i, j] = d2[j, i] = d * d
    if not np.all(np.isfinite(d2)) or np.any(d2 < 0):
        raise ValidationError("distances must be finite and nonnegative")

    connected = np.zeros((n, n), dtype=bool)
    for i in range(n):
        order = np.argsort(d2[i], kind="stable")  # stable sort = ties by index
        picked = [j for j in order if j != i][:k]
        connected[i, picked] = True
    connected |= connected.T

    # log-domain normalization over the symmetrized neighborhoods
    log_w = np.where(connected, -d2, -np.inf)
    log_row = logsumexp(log_w, axis=1)
    a = np.zeros((n, n), dtype=np.complex128)
    rows, cols = np.nonzero(connected)
    vals = np.exp(-d2[rows, cols] - 0.5 * (log_row[rows] + log_row[cols]))
    a[rows, cols] = vals
    a = np.maximum(a.real, a.real.T).astype(np.complex128)  # enforce exact symmetry
    if n > dense_threshold:
        return Graph(n, sp.csr_matrix(a))
    return Graph(n, a)


def normalize_call_graph(durations, dense_threshold: int = DENSE_THRESHOLD) -> Graph:
    """Row-normalize a nonnegative duration matrix into call-time fractions.

    A[n, m] = T[n, m] / sum_k T[n, k]; all-zero rows stay all-zero (isolated
    customers).
    """
    t = np.asarray(durations, dtype=float)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValidationError("durations must form a square matrix")
    if not np.all(np.isfinite(t)):
        raise ValidationError("durations must be finite")
    if np.any(t < 0):
        raise ValidationError("durations must be nonnegative")
    if np.any(np.diagonal(t) != 0):
        raise ValidationError("durations must have a zero diagonal")
    sums = t.sum(axis=1)
    safe = np.where(sums > 0, sums, 1.0)
    a = (t / safe[:, None]).astype(np.complex128)
    n = t.shape[0]
    if n > dense_threshold:
        return Graph(n, sp.csr_matrix(a))
    return Graph(n, a)
