"""Polynomial bases: evaluation, orthonormality, norms and roots."""

import numpy as np
import pytest

from mrinterp.errors import AllZeroError, DimensionMismatchError
from mrinterp.polybasis import (
    ChebyshevSegmentBasis,
    PolyCoeffs,
    ShiftedMonomialBasis,
    basis_matrix,
    coeff_norm,
    eval_basis,
    eval_poly,
    poly_roots,
)


class TestEvalBasis:
    def test_monomial_values(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=5)
        assert eval_basis(b, 3, 2.0) == pytest.approx(8.0)
        b2 = ShiftedMonomialBasis(center=1.0 + 1.0j, max_degree=5)
        assert eval_basis(b2, 2, 2.0 + 1.0j) == pytest.approx(1.0)

    def test_chebyshev_values(self):
        b = ChebyshevSegmentBasis(a=-1.0, b=1.0, max_degree=5)
        assert eval_basis(b, 0, 0.3) == pytest.approx(1.0)
        # T_2(1/2) = -1/2, scaled by sqrt(2)
        assert eval_basis(b, 2, 0.5) == pytest.approx(-np.sqrt(2.0) / 2.0)

    def test_degree_cap_enforced(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=2)
        with pytest.raises(ValueError):
            eval_basis(b, 3, 1.0)

    def test_hierarchical_leading_growth(self):
        # psi_l grows like |mu|^l far away, so it has exact degree l
        b = ChebyshevSegmentBasis(a=0.0, b=4.0, max_degree=8)
        big = 1e6
        for l in range(1, 9):
            ratio = abs(eval_basis(b, l, big)) / big**l
            assert 1e-8 < ratio < 1e8


class TestOrthonormality:
    def test_monomial_unit_circle(self):
        # trapezoid rule on the centered unit circle; exact for these
        # harmonics, so agreement to near machine precision
        b = ShiftedMonomialBasis(center=0.7 - 0.2j, max_degree=6)
        theta = 2 * np.pi * np.arange(2048) / 2048
        mu = b.center + np.exp(1j * theta)
        B = basis_matrix(b, 6, mu)
        G = (B.conj().T @ B) / 2048
        np.testing.assert_allclose(G, np.eye(7), atol=1e-12)

    @pytest.mark.parametrize("a,b_", [(-1.0, 1.0), (10.0, 40.0), (1j, 4.0 + 3.0j)])
    def test_chebyshev_segment(self, a, b_):
        # midpoint rule in the parametrizing angle of the segment
        basis = ChebyshevSegmentBasis(a=a, b=b_, max_degree=7)
        n = 2000
        theta = (np.arange(n) + 0.5) * np.pi / n
        mu = (a + b_) / 2.0 + (b_ - a) / 2.0 * np.cos(theta)
        B = basis_matrix(basis, 7, mu)
        G = (B.conj().T @ B) / n
        np.testing.assert_allclose(G, np.eye(8), atol=1e-10)


class TestEvalPoly:
    def test_linear_example(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=1)
        p = PolyCoeffs(b, np.array([-2.0, 1.0]) / np.sqrt(5.0))
        assert eval_poly(p, 2.0) == pytest.approx(0.0, abs=1e-15)
        assert p(0.0) == pytest.approx(-2.0 / np.sqrt(5.0))

    def test_monomial_matches_power_sum(self):
        # oracle: direct power-basis summation
        rng = np.random.default_rng(21)
        for _ in range(25):
            deg = int(rng.integers(1, 12))
            c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
            mu0 = complex(rng.standard_normal(), rng.standard_normal())
            p = PolyCoeffs(ShiftedMonomialBasis(center=mu0, max_degree=deg), c)
            z = complex(rng.standard_normal(), rng.standard_normal())
            direct = sum(c[l] * (z - mu0) ** l for l in range(deg + 1))
            assert abs(p(z) - direct) <= 1e-13 * max(1.0, abs(direct))

    def test_chebyshev_matches_cos_formula(self):
        # oracle: T_l(cos t) = cos(l t) on the segment
        basis = ChebyshevSegmentBasis(a=-1.0, b=1.0, max_degree=6)
        rng = np.random.default_rng(22)
        c = rng.standard_normal(7)
        p = PolyCoeffs(basis, c)
        for t in rng.uniform(0, np.pi, 10):
            z = np.cos(t)
            direct = c[0] + np.sqrt(2.0) * sum(c[l] * np.cos(l * t) for l in range(1, 7))
            assert abs(p(z) - direct) <= 1e-12

    def test_array_evaluation(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=2)
        p = PolyCoeffs(b, np.array([1.0, 0.0, 1.0]))
        np.testing.assert_allclose(p(np.array([0.0, 1.0, 2.0])), [1.0, 2.0, 5.0])


class TestCoeffNorm:
    def test_pythagorean(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=1)
        assert coeff_norm(PolyCoeffs(b, np.array([3.0, 4.0]))) == pytest.approx(5.0)

    def test_unit_vectors(self):
        b = ChebyshevSegmentBasis(a=0.0, b=1.0, max_degree=4)
        for l in range(5):
            c = np.zeros(5)
            c[l] = 1.0
            assert coeff_norm(PolyCoeffs(b, c)) == pytest.approx(1.0)


class TestRoots:
    def test_linear_root(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=1)
        roots, n_inf = poly_roots(PolyCoeffs(b, np.array([-2.0, 1.0])))
        np.testing.assert_allclose(roots, [2.0], atol=1e-14)
        assert n_inf == 0

    def test_constant_reports_roots_at_infinity(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=2)
        roots, n_inf = poly_roots(PolyCoeffs(b, np.array([1.0, 0.0, 0.0])))
        assert roots.size == 0
        assert n_inf == 2

    def test_quadratic_pair(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=2)
        roots, n_inf = poly_roots(PolyCoeffs(b, np.array([-1.0, 0.0, 1.0])))
        np.testing.assert_allclose(sorted(roots.real), [-1.0, 1.0], atol=1e-12)
        assert n_inf == 0

    def test_shifted_center_moves_roots(self):
        b = ShiftedMonomialBasis(center=5.0, max_degree=1)
        roots, _ = poly_roots(PolyCoeffs(b, np.array([-2.0, 1.0])))
        np.testing.assert_allclose(roots, [7.0], atol=1e-13)

    def test_chebyshev_known_roots(self):
        # T_2 roots are +-1/sqrt(2) in the pullback variable
        basis = ChebyshevSegmentBasis(a=-1.0, b=1.0, max_degree=2)
        roots, n_inf = poly_roots(PolyCoeffs(basis, np.array([0.0, 0.0, 1.0])))
        np.testing.assert_allclose(sorted(roots.real), [-1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-12)
        assert n_inf == 0

    def test_roots_rebuild_monomial(self):
        rng = np.random.default_rng(31)
        for deg in (3, 10, 30):
            c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
            c[-1] += 3.0  # keep the leading coefficient significant
            b = ShiftedMonomialBasis(center=0.3 - 0.1j, max_degree=deg)
            roots, n_inf = poly_roots(PolyCoeffs(b, c))
            assert n_inf == 0
            rebuilt = np.poly(roots - b.center)[::-1] * c[-1]  # back to ascending
            np.testing.assert_allclose(rebuilt, c, rtol=1e-8, atol=1e-8 * np.abs(c).max())

    def test_roots_rebuild_chebyshev(self):
        rng = np.random.default_rng(32)
        for deg in (3, 10, 30):
            c = rng.standard_normal(deg + 1)
            c[-1] += 3.0
            basis = ChebyshevSegmentBasis(a=0.0, b=4.0, max_degree=deg)
            roots, n_inf = poly_roots(PolyCoeffs(basis, c))
            assert n_inf == 0
            z_roots = (2 * roots - basis.a - basis.b) / (basis.b - basis.a)
            rebuilt = np.polynomial.chebyshev.chebfromroots(z_roots)
            rebuilt = rebuilt / rebuilt[-1] * (c[-1] * np.sqrt(2.0))
            rebuilt[1:] /= np.sqrt(2.0)  # back to the scaled basis
            np.testing.assert_allclose(rebuilt, c, rtol=1e-8, atol=1e-8 * np.abs(c).max())

    def test_tiny_trailing_coefficients_ignored(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=3)
        c = np.array([-2.0, 1.0, 1e-17, 1e-18])
        roots, n_inf = poly_roots(PolyCoeffs(b, c))
        np.testing.assert_allclose(roots, [2.0], atol=1e-12)
        assert n_inf == 2

    def test_all_zero_raises(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=2)
        with pytest.raises(AllZeroError):
            poly_roots(PolyCoeffs(b, np.zeros(3)))


class TestPolyCoeffs:
    def test_rejects_overlong_coeffs(self):
        b = ShiftedMonomialBasis(center=0.0, max_degree=1)
        with pytest.raises(DimensionMismatchError):
            PolyCoeffs(b, np.array([1.0, 2.0, 3.0]))
