"""Minimal rational interpolation of vector-valued parametric maps.

Given snapshots u(mu_1), ..., u(mu_S) of a map into a Hilbert space, the
surrogate is the ratio I(u*Q)/Q of the degree-(S-1) polynomial interpolant of
u*Q and a denominator Q of degree at most N.  Among unit-coefficient-norm
candidates, Q minimizes the norm of the leading coefficient of I(u*Q), a
quantity that vanishes exactly when u*Q is itself a polynomial of degree
below S-1.  The minimization reduces to the smallest right singular vector of
a small Gramian factor assembled from snapshot coordinates, basis values at
the nodes and nodal-derivative weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyApproxError
from .polybasis import PolyCoeffs, basis_matrix, eval_poly, poly_roots
from .sampling import SampleSet, nodal_poly_eval
from .snapshots import SnapshotBasis, orthonormalize

# Points closer than this (relative) to a node evaluate to the stored snapshot.
TAU_NODE = 1e-14
# Barycentric denominators smaller than this (relative) flag a near-pole point.
TAU_POLE = 1e-13
# Singular values within this relative distance of the smallest tie for it.
TAU_TIE = 1e-12


@dataclass(frozen=True)
class MRIConfig:
    """Build options: denominator degree bound N and the polynomial basis."""

    N: int
    basis: object

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("denominator degree N must be >= 0")
        if self.basis.max_degree < self.N:
            raise ValueError("basis max_degree must be at least N")


def build_gramian_factor(snap: SnapshotBasis, samples: SampleSet, config: MRIConfig) -> np.ndarray:
    """Assemble the (rank, N+1) factor whose columns are indexed by basis degree.

    Entry (i, l) is the leading interpolation coefficient of the product of
    snapshot coordinate i with basis element l:

        sum_j W[j][i] * psi_l(mu_j) / omega'(mu_j).

    The squared functional being minimized over unit q is the squared
    Euclidean norm of (factor @ q).
    """
    S = len(samples)
    if snap.W.shape[0] != S:
        raise DimensionMismatchError("snapshot count does not match sample count")
    if config.N > S - 1:
        raise ValueError(f"denominator degree N={config.N} needs at least N+1={config.N + 1} samples")
    B = basis_matrix(config.basis, config.N, samples.nodes)  # (S, N+1)
    return snap.W.T @ (B / samples.omega_prime[:, None])


def minimal_denominator(factor: np.ndarray):
    """Smallest right singular vector of the Gramian factor, phase-fixed.

    Returns
    -------
    q : (N+1,) ndarray
        Unit-norm coefficient vector; the coefficient of largest modulus is
        made real and positive.
    sigma_min : float
        Smallest singular value (zero-padded when the factor has fewer rows
        than columns, since the map then has a nontrivial null space).
    sigma_gap : float
        sigma_min over the second-smallest singular value; 1.0 when there is
        only one column or when both values are zero.

    Ties within relative TAU_TIE of sigma_min are broken by taking the tied
    right singular vector of smallest index, which the SVD routine orders
    deterministically.
    """
    A = np.asarray(factor, dtype=complex)
    if A.ndim != 2 or A.shape[1] == 0:
        raise DimensionMismatchError("factor must be a 2-d array with >= 1 column")
    m, n = A.shape
    if m == 0 or not np.any(A):
        # Degenerate data: every q is a minimizer; pick the first canonical one.
        q = np.zeros(n, dtype=complex)
        q[0] = 1.0
        return q, 0.0, 1.0
    U, s, Vh = np.linalg.svd(A, full_matrices=True)
    sigmas = np.concatenate([s, np.zeros(n - m)]) if n > m else s
    sigma_min = float(sigmas[-1])
    scale = float(sigmas[0])
    tied = np.nonzero(sigmas - sigma_min <= TAU_TIE * scale)[0]
    q = Vh[int(tied[0])].conj()
    pivot = int(np.argmax(np.abs(q)))
    q = q * (np.abs(q[pivot]) / q[pivot])
    if n >= 2:
        second = float(sigmas[-2])
        sigma_gap = 1.0 if (sigma_min == 0.0 and second == 0.0) else (
            sigma_min / second if second > 0.0 else 1.0
        )
    else:
        sigma_gap = 1.0
    return q, sigma_min, sigma_gap


@dataclass(frozen=True)
class RationalInterpolant:
    """A built rational surrogate.

    Members
    -------
    samples : SampleSet
    snap : SnapshotBasis
    config : MRIConfig
    q : PolyCoeffs, the unit-norm denominator.
    qnode : (S,) ndarray of denominator values at the nodes.
    factor : (rank, N+1) Gramian factor used in the minimization.
    sigma_min, sigma_gap : see ``minimal_denominator``.
    """

    samples: SampleSet
    snap: SnapshotBasis
    config: MRIConfig
    q: PolyCoeffs
    qnode: np.ndarray
    factor: np.ndarray
    sigma_min: float
    sigma_gap: float

    # -- evaluation ------------------------------------------------------

    def _node_scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.samples.nodes))))

    def evaluate(self, mu: complex) -> np.ndarray:
        """Surrogate value at mu via the second barycentric form.

        Weights are rho_j = Q(mu_j)/omega'(mu_j).  At (or within TAU_NODE of)
        a node the stored snapshot is returned, so interpolation is exact
        there by construction.
        """
        value, _ = self.evaluate_info(mu)
        return value

    def evaluate_info(self, mu: complex):
        """Like ``evaluate`` but also returns a near-pole flag.

        The flag is set when the barycentric denominator loses more than
        TAU_POLE of the magnitude of its terms to cancellation, which happens
        exactly near roots of Q away from the nodes.  The value is still
        returned (it is large or infinite there).
        """
        nodes = self.samples.nodes
        dist = np.abs(mu - nodes)
        j_hit = int(np.argmin(dist))
        if dist[j_hit] < TAU_NODE * self._node_scale():
            return self.snap.phi @ self.snap.W[j_hit], False
        rho = self.qnode / self.samples.omega_prime
        terms = rho / (mu - nodes)
        den = np.sum(terms)
        near_pole = bool(np.abs(den) < TAU_POLE * np.sum(np.abs(terms)))
        with np.errstate(divide="ignore", invalid="ignore"):
            coords = (self.snap.W.T @ terms) / den
        return self.snap.phi @ coords, near_pole

    def evaluate_many(self, mus) -> np.ndarray:
        """Column-stacked evaluations over an iterable of points."""
        return np.column_stack([self.evaluate(mu) for mu in np.asarray(mus, dtype=complex).ravel()])

    # -- derived quantities ----------------------------------------------

    def j_functional(self, q_any: PolyCoeffs) -> float:
        """Norm of the leading interpolation coefficient of u times q_any.

        q_any must use the same basis family and parameters as the built
        denominator and have degree bound at most N; shorter coefficient
        vectors are zero-padded.
        """
        if type(q_any.basis) is not type(self.q.basis) or q_any.basis != self.q.basis:
            raise DimensionMismatchError("q_any must use the interpolant's basis")
        c = q_any.coeffs
        width = self.factor.shape[1]
        if c.size > width:
            raise DimensionMismatchError(f"degree of q_any exceeds N={width - 1}")
        padded = np.zeros(width, dtype=complex)
        padded[: c.size] = c
        return float(np.linalg.norm(self.factor @ padded))

    def poles(self):
        """Finite roots of the denominator plus the count of roots at infinity."""
        return poly_roots(self.q)

    def denominator(self, mu):
        return eval_poly(self.q, mu)

    def numerator_leading(self) -> np.ndarray:
        """The minimized leading coefficient as a state-space vector."""
        return self.snap.phi @ (self.factor @ self.q.coeffs)


def build(snapshots, inner, samples: SampleSet, config: MRIConfig) -> RationalInterpolant:
    """Build a rational surrogate from raw snapshots.

    Parameters
    ----------
    snapshots : (n, S) complex array, one solution column per sample node.
    inner : EuclideanInner or WeightedInner on C^n.
    samples : SampleSet with S pairwise distinct nodes.
    config : MRIConfig with N <= S-1 and a basis of sufficient max_degree.
    """
    A = np.asarray(snapshots, dtype=complex)
    if A.ndim != 2 or A.shape[1] != len(samples):
        raise DimensionMismatchError("snapshot columns must match sample nodes")
    snap = orthonormalize(inner, A)
    factor = build_gramian_factor(snap, samples, config)
    q_vec, sigma_min, sigma_gap = minimal_denominator(factor)
    q = PolyCoeffs(config.basis, q_vec)
    qnode = np.atleast_1d(np.asarray(eval_poly(q, samples.nodes), dtype=complex))
    return RationalInterpolant(
        samples=samples,
        snap=snap,
        config=config,
        q=q,
        qnode=qnode,
        factor=factor,
        sigma_min=sigma_min,
        sigma_gap=sigma_gap,
    )


def pole_matching_error(true_poles, approx_poles) -> np.ndarray:
    """Distance from each true pole to the nearest approximate pole."""
    t = np.atleast_1d(np.asarray(true_poles, dtype=complex))
    a = np.atleast_1d(np.asarray(approx_poles, dtype=complex))
    if a.size == 0:
        raise EmptyApproxError("approximate pole set is empty")
    return np.min(np.abs(t[:, None] - a[None, :]), axis=1)


def interpolation_nodes_exact(interp: RationalInterpolant) -> np.ndarray:
    """Max reconstruction error over nodes; a cheap self-check helper."""
    errs = []
    for j, mu in enumerate(interp.samples.nodes):
        u_j = interp.snap.phi @ interp.snap.W[j]
        errs.append(np.linalg.norm(interp.evaluate(mu) - u_j))
    return np.array(errs)


def omega_over_q(interp: RationalInterpolant, mu):
    """|omega(mu)/Q(mu)|, the shape factor shared by the residual estimators."""
    om = nodal_poly_eval(interp.samples, mu)
    qv = eval_poly(interp.q, mu)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.abs(np.asarray(om) / np.asarray(qv))
    if np.isscalar(mu) or getattr(mu, "ndim", 0) == 0:
        return float(out)
    return out
