"""Seeded synthetic dataset generators.

These stand in for real sensor/hyperlink/call-record data: a smooth field
over a similarity graph, a planted two-community digraph for classification,
and a block-structured call log with planted churners. Everything is
deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graph import Graph, GraphSignal, build_graph, knn_similarity_graph, normalize_call_graph

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class SmoothField:
    coords: np.ndarray
    graph: Graph
    signal: GraphSignal
    order: int


@dataclass(frozen=True)
class TwoBlockData:
    graph: Graph
    truth: np.ndarray      # +-1 per node
    known: np.ndarray      # +-1 on seeded nodes, 0 elsewhere
    train: np.ndarray      # subset of known used to fit the stages


@dataclass(frozen=True)
class CallLogData:
    durations: np.ndarray
    graph: Graph
    churned: np.ndarray    # ground-truth outcome in {0, 1}
    observed: np.ndarray   # churn already visible in the data, in {0, 1}


def synth_smooth_field(
    n: int = 150,
    k_neighbors: int = 11,
    order: int = 8,
    noise: float = 0.0,
    seed: int = DEFAULT_SEED,
) -> SmoothField:
    """Random low-order combination of leading similarity-basis vectors.

    The signal lives (up to the additive noise) in the span of the `order`
    eigenvectors of the kNN adjacency with the largest eigenvalues, so its
    spectrum has exactly `order` nonzero coefficients when noise is 0.
    """
    if order < 1 or order > n:
        raise ValidationError("order must lie in [1, n]")
    rng = np.random.default_rng(seed)
    coords = rng.random((n, 2)) * 10.0
    graph = knn_similarity_graph(coords, k_neighbors)
    w, x = np.linalg.eigh(graph.dense().real)
    leading = x[:, np.argsort(w)[-order:]]  # largest eigenvalues
    coeffs = rng.standard_normal(order) * (0.6 ** np.arange(order))[::-1]
    coeffs[-1] = max(2.0, abs(coeffs[-1]) * 4.0)  # dominant smooth component
    values = leading @ coeffs
    if noise > 0:
        values = values + noise * rng.standard_normal(n)
    return SmoothField(coords, graph, graph.signal(values), order)


def select_seed_nodes(g: Graph, count: int, strategy: str, rng: np.random.Generator) -> np.ndarray:
    """Pick nodes to label initially: seeded-random or by total degree."""
    if strategy == "random":
        return rng.choice(g.n_nodes, size=count, replace=False)
    if strategy == "most-links":
        a = g.dense()
        degree = (a != 0).sum(axis=0) + (a != 0).sum(axis=1)
        order = np.lexsort((np.arange(g.n_nodes), -degree))
        return order[:count]
    raise ValidationError(f"unknown seed strategy {strategy!r}")


def synth_two_block(
    n: int = 100,
    p_in: float = 0.9,
    p_out: float = 0.01,
    seed_frac: float = 0.05,
    train_frac: float = 0.5,
    strategy: str = "random",
    seed: int = DEFAULT_SEED,
) -> TwoBlockData:
    """Planted-partition digraph with two communities and +-1 ground truth."""
    if n < 4 or n % 2:
        raise ValidationError("two-block graphs need an even n >= 4")
    rng = np.random.default_rng(seed)
    half = n // 2
    truth = np.concatenate([np.ones(half), -np.ones(half)])
    same_block = truth[:, None] == truth[None, :]
    probs = np.where(same_block, p_in, p_out)
    mask = rng.random((n, n)) < probs
    np.fill_diagonal(mask, False)
    edges = [(int(src), int(dst), 1.0) for dst, src in zip(*np.nonzero(mask))]
    graph = build_graph(n, edges)

    n_seeds = max(2, round(seed_frac * n))
    seeds = select_seed_nodes(graph, n_seeds, strategy, rng)
    known = np.zeros(n)
    known[seeds] = truth[seeds]
    # stratified training split: every class present among the seeds keeps
    # representatives, otherwise the greedy stage objective can go flat
    train = np.zeros(n)
    for label in (1.0, -1.0):
        members = seeds[truth[seeds] == label]
        if len(members):
            count = max(1, round(train_frac * len(members)))
            picked = rng.choice(members, size=count, replace=False)
            train[picked] = label
    return TwoBlockData(graph, truth, known, train)


def synth_call_log(
    n: int = 120,
    n_clusters: int = 10,
    churn_clusters: int = 2,
    observed_frac: float = 0.5,
    cross_rate: float = 0.08,
    seed: int = DEFAULT_SEED,
) -> CallLogData:
    """Block-structured call durations with whole clusters of churners.

    Customers call mostly within their own cluster; a few clusters are
    planted as churners, of which a seeded fraction is already observed.
    """
    if n_clusters < 2 or churn_clusters < 1 or churn_clusters >= n_clusters:
        raise ValidationError("need at least one churn and one staying cluster")
    rng = np.random.default_rng(seed)
    cluster_of = np.arange(n) % n_clusters
    churn_set = rng.choice(n_clusters, size=churn_clusters, replace=False)
    churned = np.isin(cluster_of, churn_set).astype(float)

    durations = np.zeros((n, n))
    same = cluster_of[:, None] == cluster_of[None, :]
    within = rng.uniform(5.0, 30.0, size=(n, n))
    cross = rng.uniform(0.5, 3.0, size=(n, n)) * (rng.random((n, n)) < cross_rate)
    durations = np.where(same, within, cross)
    np.fill_diagonal(durations, 0.0)

    observed = np.zeros(n)
    churn_nodes = np.nonzero(churned)[0]
    n_obs = max(1, round(observed_frac * len(churn_nodes)))
    observed[rng.choice(churn_nodes, size=n_obs, replace=False)] = 1.0
    graph = normalize_call_graph(durations)
    return CallLogData(durations, graph, churned, observed)
