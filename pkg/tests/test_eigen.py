import numpy as np
import pytest

from spectacl.eigen import (
    EigenPairs,
    EigenSolverError,
    full_dense_eigs,
    truncated_eigs,
)
from spectacl.graph import SparseSymmetricMatrix

from conftest import cliques_graph


def random_symmetric(rng, m, density=1.0):
    B = rng.standard_normal((m, m))
    if density < 1.0:
        B = B * (rng.random((m, m)) < density)
    return (B + B.T) / 2.0


def test_dense_identity():
    pairs = full_dense_eigs(np.eye(3))
    assert np.allclose(pairs.values, 1.0)
    assert np.allclose(pairs.vectors.T @ pairs.vectors, np.eye(3), atol=1e-12)


def test_dense_diagonal_abs_order():
    pairs = full_dense_eigs(np.diag([3.0, -5.0, 1.0]))
    assert pairs.values.tolist() == [-5.0, 3.0, 1.0]


def test_dense_residual_self_check(rng):
    for _ in range(50):
        A = random_symmetric(rng, 10)
        pairs = full_dense_eigs(A)
        res = np.linalg.norm(A @ pairs.vectors - pairs.vectors * pairs.values, axis=0)
        assert res.max() <= 1e-9


def test_dense_rejects_asymmetric():
    with pytest.raises(EigenSolverError, match="symmetric"):
        full_dense_eigs(np.array([[0.0, 1.0], [0.5, 0.0]]))


def test_dense_threshold():
    with pytest.raises(EigenSolverError, match="limited"):
        full_dense_eigs(np.zeros((5, 5)), max_dim=4)


def test_two_cycle_spectrum():
    W = SparseSymmetricMatrix.from_dense(np.array([[0.0, 1.0], [1.0, 0.0]]))
    pairs = truncated_eigs(W, 2)
    assert sorted(pairs.values.tolist()) == [-1.0, 1.0]
    A = W.to_dense()
    res = np.linalg.norm(A @ pairs.vectors - pairs.vectors * pairs.values, axis=0)
    assert res.max() <= 1e-12


def test_clique_pair_degenerate_projector():
    W, _ = cliques_graph((3, 3))
    pairs = truncated_eigs(W, 2)
    assert np.allclose(pairs.values, 2.0, atol=1e-10)
    # compare projectors, not vectors: the eigenspace is the span of the
    # per-clique indicator directions
    e = np.zeros((6, 2))
    e[:3, 0] = 1 / np.sqrt(3)
    e[3:, 1] = 1 / np.sqrt(3)
    expected = e @ e.T
    got = pairs.vectors @ pairs.vectors.T
    assert np.allclose(got, expected, atol=1e-8)


def test_truncated_matches_dense_oracle(rng):
    A = random_symmetric(rng, 20)
    W = SparseSymmetricMatrix.from_dense(A)
    pairs = truncated_eigs(W, 5)
    oracle = full_dense_eigs(A)
    assert np.allclose(np.abs(pairs.values), np.abs(oracle.values[:5]), atol=1e-8)


def test_lanczos_path_matches_dense_oracle(rng):
    for _ in range(5):
        A = random_symmetric(rng, 90, density=0.2)
        W = SparseSymmetricMatrix.from_dense(A)
        pairs = truncated_eigs(W, 7, dense_threshold=0)
        oracle = full_dense_eigs(A)
        assert np.allclose(pairs.values, oracle.values[:7], atol=1e-8)
        res = np.linalg.norm(A @ pairs.vectors - pairs.vectors * pairs.values, axis=0)
        assert res.max() <= 1e-8 * max(1.0, abs(pairs.values[0]))


def test_lanczos_resolves_multiplicity():
    # eight disjoint five-cliques: top eigenvalue 4 with multiplicity 8
    W, _ = cliques_graph((5,) * 8)
    pairs = truncated_eigs(W, 8, dense_threshold=0)
    assert np.allclose(pairs.values, 4.0, atol=1e-9)
    G = pairs.vectors.T @ pairs.vectors
    assert np.abs(G - np.eye(8)).max() <= 1e-8


def test_vectors_pairwise_orthogonal(rng):
    A = random_symmetric(rng, 60, density=0.3)
    pairs = truncated_eigs(SparseSymmetricMatrix.from_dense(A), 6, dense_threshold=0)
    G = pairs.vectors.T @ pairs.vectors
    assert np.abs(G - np.eye(6)).max() <= 1e-8


def test_rayleigh_quotient_equals_eigenvalue(rng):
    A = random_symmetric(rng, 40)
    pairs = truncated_eigs(SparseSymmetricMatrix.from_dense(A), 6)
    for i in range(6):
        v = pairs.vectors[:, i]
        assert abs(v @ A @ v / (v @ v) - pairs.values[i]) <= 1e-8


def test_translated_laplacian_top_is_componentwise_constant(rng):
    # difference Laplacian of a disconnected graph, shifted to be positive
    W, truth = cliques_graph((4, 5))
    A = W.to_dense()
    L = np.diag(A.sum(axis=1)) - A
    lam_max = np.linalg.eigvalsh(L).max()
    T = lam_max * np.eye(9) - L
    pairs = full_dense_eigs(T)
    assert pairs.values[0] == pytest.approx(lam_max, abs=1e-10)
    top = pairs.vectors[:, 0]
    for c in range(truth.n_clusters):
        vals = top[truth.labels == c]
        assert vals.max() - vals.min() <= 1e-8


def test_sign_convention_and_determinism(rng):
    A = random_symmetric(rng, 80, density=0.25)
    W = SparseSymmetricMatrix.from_dense(A)
    p1 = truncated_eigs(W, 5, dense_threshold=0)
    p2 = truncated_eigs(W, 5, dense_threshold=0)
    assert np.array_equal(p1.values, p2.values)
    assert np.array_equal(p1.vectors, p2.vectors)
    for i in range(5):
        j = int(np.argmax(np.abs(p1.vectors[:, i])))
        assert p1.vectors[j, i] > 0


def test_equal_magnitude_ties_prefer_positive():
    W = SparseSymmetricMatrix.from_dense(np.array([[0.0, 1.0], [1.0, 0.0]]))
    pairs = truncated_eigs(W, 2)
    assert pairs.values[0] == 1.0 and pairs.values[1] == -1.0


def test_reconstruction_at_full_rank(rng):
    A = random_symmetric(rng, 12)
    W = SparseSymmetricMatrix.from_dense(A)
    pairs = truncated_eigs(W, 12, tol=1e-10)
    recon = pairs.vectors @ np.diag(pairs.values) @ pairs.vectors.T
    assert np.abs(recon - A).max() <= 12 * 1e-10


def test_truncated_validates_d():
    W = SparseSymmetricMatrix.from_dense(np.zeros((3, 3)))
    with pytest.raises(EigenSolverError):
        truncated_eigs(W, 0)
    with pytest.raises(EigenSolverError):
        truncated_eigs(W, 4)


def test_eigenpairs_validation():
    with pytest.raises(EigenSolverError, match="ordered"):
        EigenPairs(values=np.array([1.0, 2.0]), vectors=np.eye(2))
    with pytest.raises(EigenSolverError, match="unit"):
        EigenPairs(values=np.array([2.0, 1.0]), vectors=2 * np.eye(2))
