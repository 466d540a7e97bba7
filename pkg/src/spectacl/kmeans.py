"""Lloyd's algorithm with k-means++ seeding, restarts, and deterministic ties.

Determinism rules: nearest-centroid ties go to the lowest centroid index,
centroid sums use numpy's fixed reduction order, and the per-restart random
streams are spawned from a single SeedSequence so results are reproducible
bit-for-bit and independent of thread count.  Restart streams are prefix
stable: kmeans(seed, restarts=R) explores exactly the first R spawned streams,
so adding restarts can only improve the returned inertia.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NOISE = -1

DEFAULT_RESTARTS = 10
MAX_ITER = 300


class ClusteringError(ValueError):
    """Invalid clustering input or degenerate cluster structure."""


@dataclass(frozen=True)
class Clustering:
    """Hard clustering as a length-m label vector; NOISE (-1) marks unclustered points."""

    labels: np.ndarray
    n_clusters: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ClusteringError(f"labels must be 1-d, got shape {labels.shape}")
        if labels.size:
            bad = (labels != NOISE) & ((labels < 0) | (labels >= self.n_clusters))
            if np.any(bad):
                raise ClusteringError(
                    f"labels outside [0,{self.n_clusters}) and not noise: "
                    f"{np.unique(labels[bad])}"
                )
        object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return self.labels.shape[0]

    @property
    def has_noise(self) -> bool:
        return bool(np.any(self.labels == NOISE))

    def indicator(self, s: int) -> np.ndarray:
        """Binary membership vector of cluster s as floats."""
        return (self.labels == s).astype(np.float64)

    def sizes(self) -> np.ndarray:
        """Counts per cluster id 0..n_clusters-1 (noise not included)."""
        counts = np.zeros(self.n_clusters, dtype=np.int64)
        for s in range(self.n_clusters):
            counts[s] = int(np.sum(self.labels == s))
        return counts


@dataclass(frozen=True)
class KMeansResult:
    clustering: Clustering
    centroids: np.ndarray
    inertia: float
    iterations: int
    inertia_history: tuple[float, ...]


def kmeans(
    data: np.ndarray,
    r: int,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    max_iter: int = MAX_ITER,
) -> KMeansResult:
    """Best-of-restarts Lloyd clustering into r groups.

    Each restart draws a k-means++ initialization from its own spawned random
    stream and iterates to an assignment fixpoint (or max_iter).  The result
    with the lowest inertia wins; ties keep the earliest restart.
    """
    X = np.asarray(data, dtype=np.float64)
    if X.ndim != 2:
        raise ClusteringError(f"data must be 2-d, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ClusteringError("data contains non-finite entries")
    m = X.shape[0]
    if not 1 <= r <= m:
        raise ClusteringError(f"need 1 <= r <= m, got r={r}, m={m}")
    if restarts < 1:
        raise ClusteringError(f"need restarts >= 1, got {restarts}")

    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        centers = _kmeanspp_init(X, r, rng)
        result = _lloyd(X, centers, max_iter)
        if best is None or result.inertia < best.inertia:
            best = result
    return best


def _kmeanspp_init(X: np.ndarray, r: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: subsequent centers drawn proportional to squared distance."""
    m = X.shape[0]
    first = int(rng.integers(m))
    centers = np.empty((r, X.shape[1]), dtype=np.float64)
    centers[0] = X[first]
    d2 = np.einsum("ij,ij->i", X - centers[0], X - centers[0])
    for i in range(1, r):
        total = float(d2.sum())
        if total <= 0.0:
            idx = int(rng.integers(m))
        else:
            idx = int(rng.choice(m, p=d2 / total))
        centers[i] = X[idx]
        cand = np.einsum("ij,ij->i", X - centers[i], X - centers[i])
        d2 = np.minimum(d2, cand)
    return centers


def _assign(X: np.ndarray, centers: np.ndarray):
    m, r = X.shape[0], centers.shape[0]
    dist2 = np.empty((m, r), dtype=np.float64)
    for i in range(r):
        diff = X - centers[i]
        dist2[:, i] = np.einsum("ij,ij->i", diff, diff)
    labels = np.argmin(dist2, axis=1)  # argmin takes the first minimum: lowest index wins ties
    return labels, dist2


def _lloyd(X: np.ndarray, centers: np.ndarray, max_iter: int) -> KMeansResult:
    m, r = X.shape[0], centers.shape[0]
    centers = centers.copy()
    prev_labels = None
    history = []
    iterations = 0
    labels = np.zeros(m, dtype=np.int64)
    for _ in range(max_iter):
        iterations += 1
        labels, dist2 = _assign(X, centers)
        labels, dist2 = _repair_empty(X, centers, labels, dist2)
        for i in range(r):
            members = X[labels == i]
            centers[i] = members.mean(axis=0)
        inertia = 0.0
        for i in range(r):
            diff = X[labels == i] - centers[i]
            inertia += float(np.einsum("ij,ij->", diff, diff))
        history.append(inertia)
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            break
        prev_labels = labels
    return KMeansResult(
        clustering=Clustering(labels=labels, n_clusters=r),
        centroids=centers,
        inertia=history[-1],
        iterations=iterations,
        inertia_history=tuple(history),
    )


def _repair_empty(X, centers, labels, dist2):
    """Reseed each empty centroid at the point farthest from its assigned centroid.

    The moved point's cost drops to zero and nobody else moves, so the Lloyd
    objective stays non-increasing through repairs.
    """
    r = centers.shape[0]
    counts = np.bincount(labels, minlength=r)
    while np.any(counts == 0):
        empty = int(np.flatnonzero(counts == 0)[0])
        cost = dist2[np.arange(len(labels)), labels].copy()
        # a point alone in its cluster cannot move without emptying it
        cost[counts[labels] <= 1] = -np.inf
        pick = int(np.argmax(cost))
        if cost[pick] == -np.inf:
            raise ClusteringError("cannot repair empty cluster: too few distinct points")
        counts[labels[pick]] -= 1
        labels[pick] = empty
        counts[empty] = 1
        centers[empty] = X[pick]
        diff = X - centers[empty]
        dist2[:, empty] = np.einsum("ij,ij->i", diff, diff)
    return labels, dist2


def labeling_inertia(data: np.ndarray, clustering: Clustering) -> float:
    """Within-cluster scatter of an arbitrary labeling about exact cluster means."""
    X = np.asarray(data, dtype=np.float64)
    total = 0.0
    for s in range(clustering.n_clusters):
        members = X[clustering.labels == s]
        if members.shape[0] == 0:
            raise ClusteringError(f"cluster {s} is empty")
        diff = members - members.mean(axis=0)
        total += float(np.einsum("ij,ij->", diff, diff))
    return total


def trace_objective(data: np.ndarray, clustering: Clustering) -> float:
    """Between-cluster trace value: sum over clusters of |sum of rows|^2 / size.

    Satisfies the identity total scatter = within-cluster scatter + trace value.
    """
    X = np.asarray(data, dtype=np.float64)
    if X.shape[0] != clustering.m:
        raise ClusteringError("data and clustering length mismatch")
    total = 0.0
    for s in range(clustering.n_clusters):
        members = X[clustering.labels == s]
        if members.shape[0] == 0:
            raise ClusteringError(f"cluster {s} is empty")
        colsum = members.sum(axis=0)
        total += float(colsum @ colsum) / members.shape[0]
    return total
