"""Truncated eigendecomposition of real symmetric matrices, ordered by |eigenvalue|.

The clustering pipelines need the d eigenpairs of largest *absolute* eigenvalue
of an indefinite adjacency matrix.  A single-ended iterative scheme converges
toward one extreme of the spectrum only, so `truncated_eigs` runs Lanczos with
full reorthogonalization once per spectral end (largest-algebraic and
smallest-algebraic), merges the two converged prefixes, and keeps the d pairs
of largest magnitude.  The d largest |eigenvalues| always consist of a prefix
of each end of the algebraic ordering, so converging d pairs per end is
sufficient.

Full reorthogonalization keeps the Krylov basis numerically orthonormal, which
makes the classical residual estimate beta_k * |s_k| reliable and avoids ghost
copies of converged Ritz values.  When an invariant subspace is exhausted
(lucky breakdown), iteration continues from a fresh random vector orthogonal
to the current basis; this is what lets repeated eigenvalues surface one copy
at a time.  Small problems skip the iteration entirely and use the dense path.

Determinism: start vectors come from a fixed internal seed, and every returned
eigenvector is flipped so its largest-magnitude coordinate is positive (ties
to the lower index), so repeated calls give bit-identical output for simple
eigenvalues.  For repeated eigenvalues any orthonormal basis of the eigenspace
may come back; compare projectors, not vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .graph import SparseSymmetricMatrix

# m at or below which truncated_eigs just calls the dense solver.
DENSE_FALLBACK_DIM = 512
# Hard cap for the dense oracle itself.
DENSE_ORACLE_LIMIT = 2048
# Internal entropy prefix for reproducible Lanczos start vectors.
_START_SEED = 0x5EED
# Matrix-vector product budget per spectral end, in multiples of m.
_MATVEC_BUDGET_FACTOR = 10


class EigenSolverError(RuntimeError):
    """Eigensolver failure; carries the best residual achieved, if known."""

    def __init__(self, message, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues ordered by descending |value| with unit-norm eigenvectors."""

    values: np.ndarray  # shape (d,)
    vectors: np.ndarray  # shape (m, d), column i pairs with values[i]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        vecs = np.asarray(self.vectors, dtype=np.float64)
        if vals.ndim != 1 or vecs.ndim != 2 or vecs.shape[1] != vals.shape[0]:
            raise EigenSolverError(
                f"inconsistent shapes: values {vals.shape}, vectors {vecs.shape}"
            )
        mags = np.abs(vals)
        if np.any(mags[:-1] < mags[1:]):
            raise EigenSolverError("eigenvalues not ordered by descending magnitude")
        norms = np.linalg.norm(vecs, axis=0)
        if np.any(np.abs(norms - 1.0) > 1e-10):
            raise EigenSolverError("eigenvector columns are not unit norm")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "vectors", vecs)

    @property
    def d(self) -> int:
        return self.values.shape[0]


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so the largest-|entry| coordinate is positive (first on ties)."""
    out = vectors.copy()
    for i in range(out.shape[1]):
        j = int(np.argmax(np.abs(out[:, i])))
        if out[j, i] < 0:
            out[:, i] = -out[:, i]
    return out


def _abs_order(values: np.ndarray) -> np.ndarray:
    """Sort order: |value| descending, then value descending (deterministic ties)."""
    return np.lexsort((-values, -np.abs(values)))


def _dense_pairs(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, V = np.linalg.eigh(A)
    order = _abs_order(w)
    return w[order], V[:, order]


def full_dense_eigs(matrix, max_dim: int = DENSE_ORACLE_LIMIT) -> EigenPairs:
    """All eigenpairs of a dense symmetric matrix, sorted by |eigenvalue|.

    Serves as the small-problem path and as the reference the iterative solver
    is tested against.
    """
    A = np.asarray(matrix, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise EigenSolverError(f"matrix is not square: {A.shape}")
    if not np.array_equal(A, A.T):
        raise EigenSolverError("matrix is not symmetric")
    if A.shape[0] > max_dim:
        raise EigenSolverError(f"dense solver limited to m <= {max_dim}, got {A.shape[0]}")
    w, V = _dense_pairs(A)
    return EigenPairs(w, _fix_signs(V))


def truncated_eigs(
    W: SparseSymmetricMatrix,
    d: int,
    tol: float = 1e-10,
    dense_threshold: int = DENSE_FALLBACK_DIM,
) -> EigenPairs:
    """The d eigenpairs of largest |eigenvalue| of a symmetric matrix.

    Residuals ||W v - lambda v|| are verified against tol * max(1, |lambda_1|)
    before returning; non-convergence raises EigenSolverError with the
    residual that was achieved.  `dense_threshold` is the size at or below
    which the dense path is used (the iterative path also requires 2*d < m so
    the two spectral ends cannot overlap).
    """
    m = W.dim
    if not 1 <= d <= m:
        raise EigenSolverError(f"need 1 <= d <= m, got d={d}, m={m}")
    if m <= dense_threshold or 2 * d >= m:
        vals, vecs = _dense_pairs(W.to_dense())
        return EigenPairs(vals[:d], _fix_signs(vecs[:, :d]))

    top_vals, top_vecs = _lanczos_end(W, d, largest=True, tol=tol)
    bot_vals, bot_vecs = _lanczos_end(W, d, largest=False, tol=tol)
    vals = np.concatenate([top_vals, bot_vals])
    vecs = np.concatenate([top_vecs, bot_vecs], axis=1)
    if vals.shape[0] < d:
        raise EigenSolverError(
            f"iteration produced only {vals.shape[0]} of {d} requested pairs"
        )
    order = _abs_order(vals)[:d]
    vals, vecs = vals[order], vecs[:, order]

    # columns are unit norm up to roundoff; tighten before the residual check
    vecs = vecs / np.linalg.norm(vecs, axis=0)
    residuals = np.linalg.norm(W.matrix @ vecs - vecs * vals, axis=0)
    bound = tol * max(1.0, float(np.abs(vals).max()))
    worst = float(residuals.max())
    if worst > bound:
        raise EigenSolverError(
            f"eigensolver did not reach tol={tol}: residual {worst:.3e} > {bound:.3e}",
            residual=worst,
        )
    return EigenPairs(vals, _fix_signs(vecs))


def _lanczos_end(
    W: SparseSymmetricMatrix,
    num: int,
    largest: bool,
    tol: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Converge `num` eigenpairs at one algebraic end of the spectrum.

    Works on B = +/-W so that the requested end is always the top of B; the
    returned eigenvalues are mapped back to W's sign convention.
    """
    m = W.dim
    sign = 1.0 if largest else -1.0
    mat = W.matrix if largest else -W.matrix
    rng = np.random.default_rng(
        np.random.SeedSequence([_START_SEED, m, int(largest)])
    )
    budget = _MATVEC_BUDGET_FACTOR * m
    check_every = max(5, num // 2)

    cap = min(m, max(4 * num + 40, 120))
    Q = np.empty((m, cap), dtype=np.float64)
    alphas: list[float] = []
    betas: list[float] = []

    q = rng.standard_normal(m)
    q /= np.linalg.norm(q)
    Q[:, 0] = q
    q_prev = np.zeros(m)
    beta_prev = 0.0
    matvecs = 0
    gershgorin = 0.0
    # top-value multiset at the previous breakdown; a breakdown may only
    # accept once a full restart block surfaced no further end-of-spectrum
    # copies (repeated eigenvalues enter the Krylov space one copy at a time)
    prev_breakdown_top = None

    def finish(theta, S, count):
        idx = np.argsort(theta)[-count:]
        return sign * theta[idx], Q[:, : len(theta)] @ S[:, idx]

    k = 0
    while True:
        w = mat @ q
        matvecs += 1
        a = float(q @ w)
        w = w - a * q - beta_prev * q_prev
        # two-pass classical Gram-Schmidt against the whole basis
        for _ in range(2):
            w -= Q[:, : k + 1] @ (Q[:, : k + 1].T @ w)
        b = float(np.linalg.norm(w))
        alphas.append(a)
        gershgorin = max(gershgorin, abs(a) + abs(b) + abs(beta_prev))

        done = k + 1 >= m or matvecs >= budget
        breakdown = b <= 1e-13 * max(1.0, gershgorin)
        if done:
            theta, S = _tridiag_eig(alphas, betas)
            return finish(theta, S, min(num, len(theta)))

        if breakdown:
            theta, S = _tridiag_eig(alphas, betas)
            scale = max(1.0, float(np.abs(theta).max()))
            top = np.sort(theta[np.argsort(theta)[-num:]]) if len(theta) >= num else None
            if top is not None and prev_breakdown_top is not None and np.allclose(
                top, prev_breakdown_top, atol=1e-10 * scale, rtol=0.0
            ):
                return finish(theta, S, num)
            prev_breakdown_top = top
            fresh = rng.standard_normal(m)
            for _ in range(2):
                fresh -= Q[:, : k + 1] @ (Q[:, : k + 1].T @ fresh)
            nf = float(np.linalg.norm(fresh))
            if nf <= 1e-8:
                # no unexplored direction left
                return finish(theta, S, min(num, len(theta)))
            q_prev, q = q, fresh / nf
            beta_prev = 0.0
            betas.append(0.0)
        else:
            if k + 1 >= num and (k + 1) % check_every == 0:
                theta, S = _tridiag_eig(alphas, betas)
                scale = max(1.0, float(np.abs(theta).max()))
                est = abs(b) * np.abs(S[-1, -num:])
                if len(theta) >= num and np.all(est <= 0.5 * tol * scale):
                    return finish(theta, S, num)
            q_prev, q = q, w / b
            beta_prev = b
            betas.append(b)

        k += 1
        if k >= Q.shape[1]:
            grow = np.empty((m, min(m, Q.shape[1] * 2)), dtype=np.float64)
            grow[:, : Q.shape[1]] = Q
            Q = grow
        Q[:, k] = q


def _tridiag_eig(alphas, betas):
    a = np.asarray(alphas, dtype=np.float64)
    if len(a) == 1:
        return a.copy(), np.ones((1, 1))
    e = np.asarray(betas[: len(a) - 1], dtype=np.float64)
    return eigh_tridiagonal(a, e)
