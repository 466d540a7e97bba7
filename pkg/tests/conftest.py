"""Shared builders and brute-force oracles used across the test suite."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from spectacl.dataio import DataMatrix
from spectacl.graph import SparseSymmetricMatrix
from spectacl.kmeans import Clustering


def cliques_graph(sizes):
    """Disjoint cliques of the given sizes, plus the ground-truth clustering."""
    m = int(sum(sizes))
    A = np.zeros((m, m))
    labels = []
    off = 0
    for i, s in enumerate(sizes):
        A[off : off + s, off : off + s] = np.ones((s, s)) - np.eye(s)
        labels.extend([i] * s)
        off += s
    truth = Clustering(labels=np.array(labels, dtype=np.int64), n_clusters=len(sizes))
    return SparseSymmetricMatrix.from_dense(A), truth


def random_points(rng, m, n=2, scale=1.0):
    return DataMatrix(rng.uniform(-scale, scale, size=(m, n)))


def random_epsilon_graph(rng, m, target_degree=6):
    """Random point cloud plus an epsilon graph with roughly target_degree edges per node."""
    from spectacl.graph import epsilon_graph, kth_neighbor_distances

    data = random_points(rng, m)
    k = min(target_degree, m - 1)
    radius = float(np.median(kth_neighbor_distances(data, k))) * 1.1
    return data, epsilon_graph(data, radius)


def dense_objective(labels, A, r):
    """Average-density objective computed directly on a dense matrix."""
    total = 0.0
    for s in range(r):
        y = (labels == s).astype(float)
        size = y.sum()
        if size == 0:
            return -np.inf
        total += y @ A @ y / size
    return total


def exhaustive_best_density(A, r=2):
    """Maximum of the average-density objective over all partitions into r
    nonempty clusters (point 0 pinned to cluster 0 to quotient out relabeling)."""
    m = A.shape[0]
    assert r == 2, "oracle implemented for bipartitions"
    best = -np.inf
    for bits in range(2 ** (m - 1)):
        labels = np.zeros(m, dtype=np.int64)
        for j in range(1, m):
            labels[j] = (bits >> (j - 1)) & 1
        if not (labels == 1).any():
            continue
        best = max(best, dense_objective(labels, A, 2))
    return best


def scatter_inertia(X, labels, r):
    """Within-cluster scatter about exact means; -inf flag for empty clusters."""
    total = 0.0
    for s in range(r):
        members = X[labels == s]
        if members.shape[0] == 0:
            return np.inf
        total += float(((members - members.mean(axis=0)) ** 2).sum())
    return total


def exhaustive_best_inertia(X, r=2):
    """Minimum within-cluster scatter over all bipartitions with both sides nonempty."""
    m = X.shape[0]
    assert r == 2
    best = np.inf
    for bits in range(2 ** (m - 1)):
        labels = np.zeros(m, dtype=np.int64)
        for j in range(1, m):
            labels[j] = (bits >> (j - 1)) & 1
        if not (labels == 1).any():
            continue
        best = min(best, scatter_inertia(X, labels, 2))
    return best


def brute_force_assignment(scores, maximize=True):
    """Optimal injective row-to-column assignment by enumeration."""
    rows, cols = scores.shape
    sign = 1.0 if maximize else -1.0
    if rows <= cols:
        best_val, best_map = -np.inf, None
        for combo in itertools.permutations(range(cols), rows):
            val = sum(sign * scores[i, c] for i, c in enumerate(combo))
            if val > best_val:
                best_val = val
                best_map = {i: c for i, c in enumerate(combo)}
        return sign * best_val, best_map
    val, inv = brute_force_assignment(scores.T, maximize)
    return val, {c: i for i, c in inv.items()}


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
