"""Shared fixtures: prescribed-structure Jordan test matrices and helpers."""

import numpy as np
import pytest

from graphdsp import exact
from graphdsp.graph import Graph


def unimodular_matrix(n: int, rng: np.random.Generator, steps: int = 14) -> np.ndarray:
    """Random integer matrix with determinant +-1 (so the inverse is integer)."""
    m = np.eye(n, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.choice(n, 2, replace=False)
        m[i] += int(rng.integers(-2, 3)) * m[j]
        if np.max(np.abs(m)) > 64:  # keep entries small enough to stay readable
            m = np.eye(n, dtype=np.int64)
    return m


def jordan_blocks_matrix(spec: list[tuple[complex, int]]) -> np.ndarray:
    """Jordan matrix with the given (eigenvalue, block size) blocks in order."""
    n = sum(size for _, size in spec)
    j = np.zeros((n, n), dtype=np.complex128)
    offset = 0
    for lam, size in spec:
        for i in range(size):
            j[offset + i, offset + i] = lam
            if i + 1 < size:
                j[offset + i, offset + i + 1] = 1.0
        offset += size
    return j


def planted_jordan_graph(spec: list[tuple[complex, int]], seed: int) -> tuple[Graph, dict]:
    """Integer graph A = V0 J V0^{-1} with prescribed Jordan structure.

    V0 is unimodular, so A is exactly representable in floats and the exact
    backend can certify the planted structure. Returns the graph plus the
    expected {eigenvalue: sorted block sizes} map.
    """
    rng = np.random.default_rng(seed)
    n = sum(size for _, size in spec)
    v0 = unimodular_matrix(n, rng)
    j = jordan_blocks_matrix(spec)
    v0e = exact.exact_matrix(v0)
    ae = v0e.dot(exact.exact_matrix(j)).dot(exact.inverse(v0e))
    a = exact.to_complex_matrix(ae)
    expected: dict[complex, list[int]] = {}
    for lam, size in spec:
        expected.setdefault(complex(lam), []).append(size)
    for lam in expected:
        expected[lam].sort(reverse=True)
    return Graph.from_adjacency(a), expected


def random_digraph(n: int, seed: int, density: float = 0.6, integer: bool = False) -> Graph:
    """Seeded random weighted digraph (generically diagonalizable, p = m)."""
    rng = np.random.default_rng(seed)
    if integer:
        a = rng.integers(-3, 4, size=(n, n)).astype(np.complex128)
    else:
        a = rng.standard_normal((n, n)) + 0.3j * rng.standard_normal((n, n))
    a[rng.random((n, n)) > density] = 0.0
    return Graph.from_adjacency(a)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
