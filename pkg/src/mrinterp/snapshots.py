"""State-space inner products and snapshot orthonormalization.

Snapshots are columns of an (n, S) complex matrix.  ``orthonormalize`` runs
modified Gram-Schmidt with one reorthogonalization pass in the chosen inner
product and returns an orthonormal basis together with the coordinates of
every snapshot, so that ``phi @ W[j]`` reconstructs snapshot j even when
dependent columns were dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatchError, ZeroSnapshotError

# Post-projection norm below this fraction of the original drops the column.
TAU_RANK = 1e-12
# Norms below this absolute floor count as exactly zero.
TAU_ZERO = 1e-300


class EuclideanInner:
    """Plain Euclidean inner product on C^dim."""

    def __init__(self, dim: int):
        if dim < 0:
            raise ValueError("dim must be >= 0")
        self.dim = dim

    def inner(self, u, v):
        """<u, v> = v^H u; conjugate-linear in the second argument."""
        u = np.asarray(u)
        v = np.asarray(v)
        if u.shape != (self.dim,) or v.shape != (self.dim,):
            raise DimensionMismatchError("vector length does not match inner product dim")
        return complex(np.vdot(v, u))

    def norm(self, u) -> float:
        u = np.asarray(u)
        if u.shape != (self.dim,):
            raise DimensionMismatchError("vector length does not match inner product dim")
        return float(np.linalg.norm(u))

    def apply(self, X):
        """Gram-matrix action; identity here."""
        return np.asarray(X)


class WeightedInner:
    """Inner product <u, v> = v^H M u with M Hermitian positive definite.

    Definiteness is checked once at construction via a Cholesky
    factorization; the factor is kept for norm evaluations.
    """

    def __init__(self, matrix):
        M = np.asarray(matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionMismatchError("weight matrix must be square")
        if not np.allclose(M, M.conj().T, rtol=1e-12, atol=1e-14 * max(1.0, np.abs(M).max())):
            raise ValueError("weight matrix must be Hermitian")
        try:
            # lower-triangular L with L @ L^H = M; fails unless M is positive definite
            self._chol = scipy.linalg.cholesky(M, lower=True)
        except scipy.linalg.LinAlgError as exc:
            raise ValueError("weight matrix must be positive definite") from exc
        self.matrix = M
        self.dim = M.shape[0]

    def inner(self, u, v):
        """<u, v> = v^H M u; conjugate-linear in the second argument."""
        u = np.asarray(u)
        v = np.asarray(v)
        if u.shape != (self.dim,) or v.shape != (self.dim,):
            raise DimensionMismatchError("vector length does not match inner product dim")
        return complex(np.vdot(v, self.matrix @ u))

    def norm(self, u) -> float:
        u = np.asarray(u)
        if u.shape != (self.dim,):
            raise DimensionMismatchError("vector length does not match inner product dim")
        # |L^H u| = sqrt(u^H M u), nonnegative by construction
        return float(np.linalg.norm(self._chol.conj().T @ u))

    def apply(self, X):
        return self.matrix @ np.asarray(X)


def v_inner(inner, u, v):
    """Module-level convenience for inner.inner(u, v)."""
    return inner.inner(u, v)


@dataclass(frozen=True)
class SnapshotBasis:
    """Orthonormalized snapshots.

    Members
    -------
    inner : inner-product object used throughout.
    phi : (n, rank) ndarray, orthonormal columns in that inner product.
    W : (S, rank) ndarray, W[j][i] = <snapshot_j, phi_i>.
    rank : number of kept columns.
    """

    inner: object
    phi: np.ndarray
    W: np.ndarray
    rank: int

    def reconstruct(self, j: int) -> np.ndarray:
        return self.phi @ self.W[j]


def orthonormalize(inner, snapshots) -> SnapshotBasis:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Parameters
    ----------
    inner : EuclideanInner or WeightedInner
    snapshots : (n, S) complex array, one snapshot per column.

    Returns
    -------
    SnapshotBasis
        Columns whose post-projection norm falls below TAU_RANK times their
        original norm are dropped from phi; their coordinate rows in W are
        still the projections onto the kept basis.

    Raises
    ------
    ZeroSnapshotError
        If a lone snapshot (S = 1) has norm below TAU_ZERO.
    """
    A = np.asarray(snapshots, dtype=complex)
    if A.ndim != 2:
        raise DimensionMismatchError("snapshots must be an (n, S) array")
    n, S = A.shape
    if getattr(inner, "dim", n) != n:
        raise DimensionMismatchError("snapshot length does not match inner product dim")
    basis_cols = []
    rows = []  # coordinate row per snapshot, length = rank at its time
    for j in range(S):
        x = A[:, j].copy()
        norm0 = inner.norm(x)
        if norm0 < TAU_ZERO:
            if S == 1:
                raise ZeroSnapshotError("single snapshot has zero norm")
            rows.append(np.zeros(len(basis_cols), dtype=complex))
            continue
        coeffs = np.zeros(len(basis_cols), dtype=complex)
        for _ in range(2):  # MGS plus one reorthogonalization sweep
            for i, phi_i in enumerate(basis_cols):
                c = inner.inner(x, phi_i)
                x -= c * phi_i
                coeffs[i] += c
        norm1 = inner.norm(x)
        if norm1 < TAU_RANK * norm0:
            rows.append(coeffs)
        else:
            basis_cols.append(x / norm1)
            rows.append(np.concatenate([coeffs, [norm1]]))
    rank = len(basis_cols)
    W = np.zeros((S, rank), dtype=complex)
    for j, row in enumerate(rows):
        W[j, : row.size] = row
    phi = np.column_stack(basis_cols) if rank else np.zeros((n, 0), dtype=complex)
    return SnapshotBasis(inner=inner, phi=phi, W=W, rank=rank)
