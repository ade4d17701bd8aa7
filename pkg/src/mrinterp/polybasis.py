"""Hierarchical polynomial bases, their evaluation and rootfinding.

Two variants, both orthonormal in an arc-averaged boundary inner product of
their natural region: shifted monomials (mu - mu0)^l for a disk centered at
mu0, and scaled Chebyshev polynomials for a segment (psi_0 = T_0 and
psi_l = sqrt(2)*T_l of the affine pullback for l >= 1).  Coefficient vectors
in either basis carry a Euclidean norm that matches the function norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AllZeroError, DimensionMismatchError

# Coefficients below this relative size do not count toward the degree.
TAU_DEG = 1e-12


@dataclass(frozen=True)
class ShiftedMonomialBasis:
    center: complex
    max_degree: int

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")


@dataclass(frozen=True)
class ChebyshevSegmentBasis:
    a: complex
    b: complex
    max_degree: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("segment endpoints must differ")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")

    def pullback(self, mu):
        # affine map of the segment onto [-1, 1]
        return (2.0 * np.asarray(mu, dtype=complex) - self.a - self.b) / (self.b - self.a)


def basis_matrix(basis, degree: int, mu) -> np.ndarray:
    """Evaluate psi_0..psi_degree at the points mu; returns (len(mu), degree+1)."""
    if degree > basis.max_degree:
        raise ValueError(f"degree {degree} exceeds basis max_degree {basis.max_degree}")
    pts = np.atleast_1d(np.asarray(mu, dtype=complex))
    out = np.empty((pts.size, degree + 1), dtype=complex)
    if isinstance(basis, ShiftedMonomialBasis):
        shifted = pts - basis.center
        out[:, 0] = 1.0
        for l in range(1, degree + 1):
            out[:, l] = out[:, l - 1] * shifted
        return out
    if isinstance(basis, ChebyshevSegmentBasis):
        z = basis.pullback(pts)
        out[:, 0] = 1.0
        if degree >= 1:
            out[:, 1] = z
        for l in range(2, degree + 1):
            out[:, l] = 2.0 * z * out[:, l - 1] - out[:, l - 2]
        out[:, 1:] *= np.sqrt(2.0)
        return out
    raise TypeError(f"unsupported basis type {type(basis).__name__}")


def eval_basis(basis, l: int, mu):
    """Single basis element psi_l at mu (scalar or array)."""
    vals = basis_matrix(basis, l, mu)[:, l]
    if np.isscalar(mu) or getattr(mu, "ndim", 0) == 0:
        return complex(vals[0])
    return vals.reshape(np.shape(mu))


@dataclass(frozen=True)
class PolyCoeffs:
    """A polynomial given by coefficients in a hierarchical basis."""

    basis: object
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise DimensionMismatchError("coeffs must be a nonempty 1-d array")
        if c.size - 1 > self.basis.max_degree:
            raise DimensionMismatchError(
                f"{c.size - 1} exceeds basis max_degree {self.basis.max_degree}"
            )
        object.__setattr__(self, "coeffs", c)

    @property
    def degree_bound(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, mu):
        return eval_poly(self, mu)


def eval_poly(p: PolyCoeffs, mu):
    """Evaluate sum_l coeffs[l] * psi_l(mu).

    Monomial variant uses Horner on the shifted variable; Chebyshev variant
    accumulates through the three-term recurrence.
    """
    pts = np.atleast_1d(np.asarray(mu, dtype=complex))
    c = p.coeffs
    if isinstance(p.basis, ShiftedMonomialBasis):
        shifted = pts - p.basis.center
        acc = np.full(pts.shape, c[-1], dtype=complex)
        for l in range(c.size - 2, -1, -1):
            acc = acc * shifted + c[l]
    else:
        B = basis_matrix(p.basis, c.size - 1, pts)
        acc = B @ c
    if np.isscalar(mu) or getattr(mu, "ndim", 0) == 0:
        return complex(acc.flat[0])
    return acc.reshape(np.shape(mu))


def coeff_norm(p: PolyCoeffs) -> float:
    """Euclidean norm of the coefficient vector (equals the basis-weighted
    function norm, by orthonormality)."""
    return float(np.linalg.norm(p.coeffs))


def effective_degree(coeffs: np.ndarray) -> int:
    """Largest l with |coeffs[l]| above the relative degree cutoff."""
    norm = np.linalg.norm(coeffs)
    if norm == 0.0:
        raise AllZeroError("all coefficients are zero")
    sig = np.nonzero(np.abs(coeffs) > TAU_DEG * norm)[0]
    if sig.size == 0:
        # pathological: every entry tiny but norm > 0; treat top entry as degree
        return int(np.argmax(np.abs(coeffs)))
    return int(sig[-1])


def poly_roots(p: PolyCoeffs):
    """All finite roots plus the count of roots at infinity.

    The effective degree D discards trailing coefficients below the relative
    cutoff; exactly D finite roots are returned and (len(coeffs)-1) - D roots
    are reported at infinity.  Monomial variant: companion-matrix eigenvalues
    of the monic polynomial in the shifted variable, shifted back.  Chebyshev
    variant: colleague-matrix eigenvalues in the pullback variable, mapped
    back to the segment, with no conversion to monomial form.
    """
    c = p.coeffs
    D = effective_degree(c)
    n_inf = (c.size - 1) - D
    if D == 0:
        return np.array([], dtype=complex), n_inf
    if isinstance(p.basis, ShiftedMonomialBasis):
        monic = c[: D + 1][::-1]  # np.roots wants highest degree first
        roots = np.roots(monic) + p.basis.center
        return roots, n_inf
    if isinstance(p.basis, ChebyshevSegmentBasis):
        cheb = np.array(c[: D + 1])
        cheb[1:] *= np.sqrt(2.0)  # back to plain T_l coefficients
        z_roots = np.polynomial.chebyshev.chebroots(cheb)
        a, b = complex(p.basis.a), complex(p.basis.b)
        return (a + b) / 2.0 + (b - a) / 2.0 * z_roots, n_inf
    raise TypeError(f"unsupported basis type {type(p.basis).__name__}")
