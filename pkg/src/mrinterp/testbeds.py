"""Synthetic full-order models for convergence and estimator experiments.

Three families: explicit meromorphic maps with prescribed poles and residues,
random normal eigenproblems (A - mu*I) u = v whose solution maps are exactly
such meromorphic maps with orthogonal residues, and a damped 1-D bar in the
frequency domain giving an operator family quadratic in the frequency.

Randomness always flows through numpy's Philox bit generator (counter-based,
documented bit stream), keyed by the caller's seed, so identical seeds give
bit-identical models.  Draw order for the eigenproblem: eigenvalues first,
then the eigenvector seed matrix, then the load vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import AtPoleError, DimensionMismatchError, RankDeficientError, SingularSystemError
from .estimators import AffineOperator
from .snapshots import EuclideanInner


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed)))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@dataclass(frozen=True)
class MeromorphicMap:
    """u(mu) = sum_k residues[:, k] / (poles[k] - mu), simple poles only."""

    poles: np.ndarray
    residues: np.ndarray
    orthogonal: bool = False

    def __post_init__(self):
        poles = np.atleast_1d(np.asarray(self.poles, dtype=complex))
        res = np.asarray(self.residues, dtype=complex)
        if res.ndim != 2 or res.shape[1] != poles.size:
            raise DimensionMismatchError("residues must be (n, len(poles))")
        if poles.size > 1:
            d = np.abs(poles[:, None] - poles[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() == 0.0:
                raise ValueError("poles must be pairwise distinct")
        if self.orthogonal and poles.size > 1:
            G = res.conj().T @ res
            off = G - np.diag(np.diag(G))
            if np.abs(off).max() > 1e-10 * max(1.0, np.abs(np.diag(G)).max()):
                raise ValueError("residues declared orthogonal are not")
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "residues", res)

    @property
    def dim(self) -> int:
        return self.residues.shape[0]


def eval_meromorphic(m: MeromorphicMap, mu):
    """Evaluate the map at mu (scalar -> vector, array -> stacked columns)."""
    mu_arr = np.atleast_1d(np.asarray(mu, dtype=complex))
    gaps = m.poles[:, None] - mu_arr[None, :]
    scale = max(1.0, float(np.max(np.abs(m.poles))))
    if np.min(np.abs(gaps)) < 1e-14 * scale:
        raise AtPoleError("evaluation point coincides with a pole")
    vals = m.residues @ (1.0 / gaps)
    if np.isscalar(mu) or getattr(mu, "ndim", 0) == 0:
        return vals[:, 0]
    return vals


def random_orthogonal_map(n: int, poles, norms=None, seed: int = 0) -> MeromorphicMap:
    """Meromorphic map with exactly orthogonal random residue directions."""
    poles = np.atleast_1d(np.asarray(poles, dtype=complex))
    P = poles.size
    if P > n:
        raise DimensionMismatchError("cannot fit more orthogonal residues than dimensions")
    rng = _rng(seed)
    Q, _ = np.linalg.qr(_complex_gaussian(rng, (n, P)))
    norms = np.ones(P) if norms is None else np.asarray(norms, dtype=float)
    return MeromorphicMap(poles=poles, residues=Q * norms[None, :], orthogonal=True)


@dataclass(frozen=True)
class NormalEigenFOM:
    """Normal matrix A = U diag(eigenvalues) U^H with load vector v.

    The solution map mu -> (A - mu*I)^{-1} v is meromorphic with poles at the
    eigenvalues and mutually orthogonal residues (u_k^H v) u_k.
    """

    A: np.ndarray
    v: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    seed: int

    @property
    def dim(self) -> int:
        return self.v.size


def normal_fom_from_eigenvalues(eigenvalues, seed: int = 0) -> NormalEigenFOM:
    """Normal eigenproblem with prescribed spectrum and seeded random frame."""
    lam = np.atleast_1d(np.asarray(eigenvalues, dtype=complex))
    n = lam.size
    if n == 0:
        raise DimensionMismatchError("need at least one eigenvalue")
    rng = _rng(seed)
    U, _ = np.linalg.qr(_complex_gaussian(rng, (n, n)))
    v = _complex_gaussian(rng, n)
    A = (U * lam[None, :]) @ U.conj().T
    return NormalEigenFOM(A=A, v=v, eigenvalues=lam, eigenvectors=U, seed=int(seed))


def random_normal_fom(n: int, bound_box=(-5.0, 5.0, -5.0, 5.0), seed: int = 0) -> NormalEigenFOM:
    """Random normal eigenproblem, eigenvalues uniform over a box.

    Draw order with the Philox stream: n eigenvalue pairs (real then
    imaginary, jointly via a (n, 2) uniform block), then the (n, n) complex
    gaussian eigenvector seed, then the complex gaussian load.
    """
    re_lo, re_hi, im_lo, im_hi = bound_box
    rng = _rng(seed)
    box = rng.uniform(size=(n, 2))
    lam = (re_lo + (re_hi - re_lo) * box[:, 0]) + 1j * (im_lo + (im_hi - im_lo) * box[:, 1])
    U, _ = np.linalg.qr(_complex_gaussian(rng, (n, n)))
    v = _complex_gaussian(rng, n)
    A = (U * lam[None, :]) @ U.conj().T
    return NormalEigenFOM(A=A, v=v, eigenvalues=lam, eigenvectors=U, seed=int(seed))


def solve_fom(fom: NormalEigenFOM, mu: complex) -> np.ndarray:
    """Solve (A - mu*I) u = v; refuses parameters within 1e-12 of the spectrum."""
    if np.min(np.abs(fom.eigenvalues - mu)) < 1e-12:
        raise SingularSystemError("parameter sits on an eigenvalue")
    return np.linalg.solve(fom.A - mu * np.eye(fom.dim), fom.v)


def fom_as_meromorphic(fom: NormalEigenFOM) -> MeromorphicMap:
    """Exact pole/residue form of the eigenproblem's solution map."""
    weights = fom.eigenvectors.conj().T @ fom.v
    residues = fom.eigenvectors * weights[None, :]
    return MeromorphicMap(poles=fom.eigenvalues, residues=residues, orthogonal=True)


def fom_affine(fom: NormalEigenFOM) -> AffineOperator:
    """The eigenproblem as the linear-in-mu family F(mu) = A - mu*I."""
    n = fom.dim
    return AffineOperator(
        thetaF=[lambda mu: 1.0, lambda mu: mu],
        F=[fom.A, -np.eye(n)],
        thetaf=[lambda mu: 1.0],
        f=[fom.v],
        linear_in_mu=True,
    )


def helmholtz_1d_fom(
    m: int,
    eta: float = 0.5,
    rho: float = 1.0,
    stiffness=25.0,
    length: float = 1.0,
) -> AffineOperator:
    """Damped 1-D bar in the frequency domain, clamped left / free right end.

    Finite differences on m grid points (the clamped one eliminated, so
    n = m - 1 unknowns) give the family

        F(nu) = K0 + nu * (2*pi*eta*1j) * M0 - nu^2 * (4*pi^2) * M0

    with K0 the second-difference stiffness (free-end last row), M0 = rho*I,
    and a unit load at the free end.  ``stiffness`` may be a scalar or a
    per-cell array of length m-1.  With eta = 0 the resonances sit at
    nu = +-sqrt(eig(K0)/(4*pi^2*rho)); any eta > 0 shifts them all strictly
    above the real axis.
    """
    if m < 3:
        raise ValueError("need at least 3 grid points")
    n = m - 1
    h = length / (m - 1)
    kappa = np.broadcast_to(np.asarray(stiffness, dtype=float), (n,)).copy()
    if np.any(kappa <= 0):
        raise ValueError("stiffness must be positive")
    K0 = np.zeros((n, n))
    for k in range(n - 1):
        K0[k, k] = kappa[k] + kappa[k + 1]
        K0[k, k + 1] = -kappa[k + 1]
        K0[k + 1, k] = -kappa[k + 1]
    K0[n - 1, n - 1] += kappa[n - 1]
    K0 /= h * h
    M0 = rho * np.eye(n)
    f = np.zeros(n)
    f[-1] = 1.0
    return AffineOperator(
        thetaF=[lambda nu: 1.0, lambda nu: nu, lambda nu: nu * nu],
        F=[K0, 2j * np.pi * eta * M0, -4.0 * np.pi**2 * M0],
        thetaf=[lambda nu: 1.0],
        f=[f],
        linear_in_mu=False,
    )


def quadratic_pencil_resonances(op: AffineOperator) -> np.ndarray:
    """Eigenvalues nu of F[0] + nu*F[1] + nu^2*F[2] via companion linearization.

    Solved as the generalized problem
        [[0, I], [-F0, -F1]] y = nu [[I, 0], [0, F2]] y.
    """
    if len(op.F) != 3:
        raise DimensionMismatchError("expected exactly three operator terms")
    F0, F1, F2 = (np.asarray(Fi, dtype=complex) for Fi in op.F)
    n = F0.shape[0]
    Z, eye = np.zeros((n, n), dtype=complex), np.eye(n, dtype=complex)
    A_c = np.block([[Z, eye], [-F0, -F1]])
    B_c = np.block([[eye, Z], [Z, F2]])
    return scipy.linalg.eig(A_c, B_c, right=False)


def pod_pole_baseline(snapshots, inner, N: int, A) -> np.ndarray:
    """Ritz values of A on the span of the top-N principal snapshot directions.

    Euclidean inner products use the plain SVD of the snapshot matrix; a
    weighted inner product M = L L^H works on L^H @ snapshots so the retained
    directions are M-orthonormal, and the projected matrix is V^H M A V.
    """
    X = np.asarray(snapshots, dtype=complex)
    if X.ndim != 2:
        raise DimensionMismatchError("snapshots must be an (n, S) array")
    A = np.asarray(A, dtype=complex)
    if isinstance(inner, EuclideanInner):
        U, s, _ = np.linalg.svd(X, full_matrices=False)
        rank = int(np.sum(s > 1e-12 * (s[0] if s.size else 0.0)))
        if N > rank:
            raise RankDeficientError(f"requested N={N} exceeds snapshot rank {rank}")
        V = U[:, :N]
        return np.linalg.eigvals(V.conj().T @ A @ V)
    L = inner._chol
    U, s, _ = np.linalg.svd(L.conj().T @ X, full_matrices=False)
    rank = int(np.sum(s > 1e-12 * (s[0] if s.size else 0.0)))
    if N > rank:
        raise RankDeficientError(f"requested N={N} exceeds snapshot rank {rank}")
    V = scipy.linalg.solve_triangular(L.conj().T, U[:, :N], lower=False)
    return np.linalg.eigvals(V.conj().T @ inner.matrix @ A @ V)


def sort_poles_by_center(poles, center: complex) -> np.ndarray:
    """Order poles by distance from a center, ties by real then imaginary part."""
    p = np.atleast_1d(np.asarray(poles, dtype=complex))
    order = np.lexsort((p.imag, p.real, np.abs(p - center)))
    return p[order]
