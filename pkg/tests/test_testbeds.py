"""Synthetic solution maps: meromorphic fields, normal-matrix models, Helmholtz bar."""

import numpy as np
import pytest
import scipy.linalg

from mrinterp.errors import (
    AtPoleError,
    DimensionMismatchError,
    RankDeficientError,
    SingularSystemError,
)
from mrinterp.snapshots import EuclideanInner, WeightedInner
from mrinterp.testbeds import (
    MeromorphicMap,
    eval_meromorphic,
    fom_affine,
    fom_as_meromorphic,
    helmholtz_1d_fom,
    normal_fom_from_eigenvalues,
    pod_pole_baseline,
    quadratic_pencil_resonances,
    random_normal_fom,
    random_orthogonal_map,
    solve_fom,
    sort_poles_by_center,
)


class TestMeromorphicMap:
    def test_single_pole_value(self):
        m = MeromorphicMap(poles=np.array([2.0 + 0j]), residues=np.array([[1.0], [3.0]]))
        np.testing.assert_allclose(eval_meromorphic(m, 0.0), [0.5, 1.5], atol=1e-15)
        np.testing.assert_allclose(eval_meromorphic(m, 1.0 + 1j),
                                   np.array([1.0, 3.0]) / (1.0 - 1j), atol=1e-15)

    def test_two_pole_superposition(self):
        m = MeromorphicMap(
            poles=np.array([1.0, -1.0], dtype=complex),
            residues=np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex),
        )
        v = eval_meromorphic(m, 3.0)
        np.testing.assert_allclose(v, [-1 / 2.0, -1 / 4.0], atol=1e-15)

    def test_at_pole_raises(self):
        m = MeromorphicMap(poles=np.array([2.0 + 0j]), residues=np.array([[1.0]]))
        with pytest.raises(AtPoleError):
            eval_meromorphic(m, 2.0)
        with pytest.raises(AtPoleError):
            eval_meromorphic(m, 2.0 + 1e-16j)

    def test_shape_validation(self):
        with pytest.raises(DimensionMismatchError):
            MeromorphicMap(poles=np.array([1.0 + 0j, 2.0]), residues=np.array([[1.0]]))

    def test_orthogonal_flag_checked(self):
        res = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
        with pytest.raises(ValueError):
            MeromorphicMap(poles=np.array([1.0 + 0j, 2.0]), residues=res, orthogonal=True)

    def test_random_orthogonal_map(self):
        m = random_orthogonal_map(n=12, poles=np.array([1j, 2j, 3j]), seed=4)
        assert m.orthogonal
        G = m.residues.conj().T @ m.residues
        np.testing.assert_allclose(G, np.diag(np.diag(G)), atol=1e-12)
        assert np.all(np.diag(G).real > 0)


class TestDeterminism:
    def test_random_normal_fom_bit_identical(self):
        a = random_normal_fom(n=17, seed=123, bound_box=(-1, 1, -1, 1))
        b = random_normal_fom(n=17, seed=123, bound_box=(-1, 1, -1, 1))
        assert a.A.tobytes() == b.A.tobytes()
        assert a.v.tobytes() == b.v.tobytes()
        c = random_normal_fom(n=17, seed=124, bound_box=(-1, 1, -1, 1))
        assert a.A.tobytes() != c.A.tobytes()

    def test_orthogonal_map_bit_identical(self):
        p = np.array([1j, 2.0, -3.0 + 0j])
        a = random_orthogonal_map(n=9, poles=p, seed=7)
        b = random_orthogonal_map(n=9, poles=p, seed=7)
        assert a.residues.tobytes() == b.residues.tobytes()


class TestNormalFom:
    def test_normality_and_spectrum(self):
        for seed in range(10):
            fom = random_normal_fom(n=14, seed=seed, bound_box=(-2, 2, -1, 1))
            A = fom.A
            np.testing.assert_allclose(A @ A.conj().T, A.conj().T @ A, atol=1e-10)
            got = np.sort_complex(np.linalg.eigvals(A))
            want = np.sort_complex(fom.eigenvalues)
            np.testing.assert_allclose(got, want, atol=1e-10)

    def test_prescribed_eigenvalues(self):
        lam = np.array([0.5, -0.25j, 3.0 + 1j])
        fom = normal_fom_from_eigenvalues(lam, seed=11)
        got = np.sort_complex(np.linalg.eigvals(fom.A))
        np.testing.assert_allclose(got, np.sort_complex(lam), atol=1e-12)

    def test_solve_diag_example(self):
        # A = diag(2, -1), v = (1, 1): (A - mu)^-1 v componentwise
        fom = normal_fom_from_eigenvalues(np.array([2.0, -1.0]), seed=0)
        U = fom.eigenvectors
        v = U @ np.array([1.0, 1.0], dtype=complex)
        fom = type(fom)(A=fom.A, v=v, eigenvalues=fom.eigenvalues,
                        eigenvectors=fom.eigenvectors, seed=fom.seed)
        mu = 0.5
        want = U @ (np.array([1.0, 1.0]) / (np.array([2.0, -1.0]) - mu))
        np.testing.assert_allclose(solve_fom(fom, mu), want, atol=1e-13)

    def test_solve_at_eigenvalue_raises(self):
        fom = normal_fom_from_eigenvalues(np.array([2.0, -1.0]), seed=1)
        with pytest.raises(SingularSystemError):
            solve_fom(fom, 2.0)

    def test_solve_matches_meromorphic_form(self):
        fom = random_normal_fom(n=8, seed=3, bound_box=(-1, 1, -1, 1))
        m = fom_as_meromorphic(fom)
        assert m.orthogonal
        rng = np.random.default_rng(5)
        for _ in range(5):
            mu = complex(rng.uniform(2, 3), rng.uniform(2, 3))
            np.testing.assert_allclose(solve_fom(fom, mu), eval_meromorphic(m, mu),
                                       atol=1e-11)

    def test_affine_form_solve(self):
        fom = random_normal_fom(n=6, seed=9, bound_box=(-1, 1, -1, 1))
        op = fom_affine(fom)
        assert op.linear_in_mu
        mu = 1.7 - 0.4j
        np.testing.assert_allclose(op.solve(mu), solve_fom(fom, mu), atol=1e-12)


class TestHelmholtzBar:
    def test_small_assembly(self):
        # m = 3 grid points, length 1, unit stiffness and density:
        # h = 1/2, K0 = 4*[[2,-1],[-1,1]], M0 = I, f = (0, 1)
        op = helmholtz_1d_fom(m=3, eta=0.0, rho=1.0, stiffness=1.0, length=1.0)
        K0 = op.F[0]
        np.testing.assert_allclose(K0, 4.0 * np.array([[2.0, -1.0], [-1.0, 1.0]]),
                                    atol=1e-14)
        np.testing.assert_allclose(op.rhs(10.0), [0.0, 1.0], atol=1e-15)
        # theta weights: 1, nu*2*pi*eta*i, -nu^2*4*pi^2
        nu = 3.0
        Fnu = op.assemble(nu)
        want = K0 - nu**2 * 4 * np.pi**2 * np.eye(2)
        np.testing.assert_allclose(Fnu, want, atol=1e-12)

    def test_small_resonances_closed_form(self):
        # eta = 0: resonances at nu with 4*pi^2*nu^2 an eigenvalue of K0,
        # K0 = 4*[[2,-1],[-1,1]] has eigenvalues 6 +/- 2*sqrt(5)
        op = helmholtz_1d_fom(m=3, eta=0.0, rho=1.0, stiffness=1.0, length=1.0)
        res = quadratic_pencil_resonances(op)
        lam = np.array([6.0 - 2.0 * np.sqrt(5.0), 6.0 + 2.0 * np.sqrt(5.0)])
        nu = np.sqrt(lam) / (2.0 * np.pi)
        want = np.sort(np.concatenate([nu, -nu]))
        np.testing.assert_allclose(np.sort(res.real), want, atol=1e-12)
        np.testing.assert_allclose(res.imag, 0.0, atol=1e-12)

    def test_resonances_against_generalized_eig(self):
        op = helmholtz_1d_fom(m=12, eta=0.3, rho=1.0, stiffness=25.0)
        res = quadratic_pencil_resonances(op)
        n = op.n
        F0, F1, F2 = op.F
        A = np.block([[np.zeros((n, n)), np.eye(n)], [-F0, -F1]])
        B = np.block([[np.eye(n), np.zeros((n, n))], [np.zeros((n, n)), F2]])
        want = scipy.linalg.eig(A, B, right=False)
        want = want[np.isfinite(want)]
        np.testing.assert_allclose(np.sort_complex(res), np.sort_complex(want),
                                   atol=1e-10)

    def test_damping_pushes_poles_off_axis(self):
        op = helmholtz_1d_fom(m=20, eta=0.5, rho=1.0, stiffness=25.0)
        res = quadratic_pencil_resonances(op)
        assert np.all(np.abs(res.imag) > 1e-8)
        # damped resonances of this pencil sit in the upper half plane
        assert np.all(res.imag > 0)

    def test_solve_consistency(self):
        op = helmholtz_1d_fom(m=25, eta=0.5, rho=1.0, stiffness=25.0)
        nu = 17.3
        u = op.solve(nu)
        r = op.assemble(nu) @ u - op.rhs(nu)
        assert np.linalg.norm(r) < 1e-10 * np.linalg.norm(op.rhs(nu))


class TestPodBaseline:
    def test_exact_on_invariant_subspace(self):
        # snapshots spanning an invariant subspace: projected Ritz values
        # reproduce the corresponding eigenvalues exactly
        lam = np.array([1.0, 2.0, 3.0, 10.0, 20.0])
        fom = normal_fom_from_eigenvalues(lam, seed=21)
        U = fom.eigenvectors
        rng = np.random.default_rng(22)
        X = U[:, :3] @ (rng.standard_normal((3, 6)) + 1j * rng.standard_normal((3, 6)))
        ritz = pod_pole_baseline(X, EuclideanInner(5), N=3, A=fom.A)
        np.testing.assert_allclose(np.sort_complex(ritz), lam[:3].astype(complex),
                                   atol=1e-10)

    def test_weighted_inner_route(self):
        lam = np.array([1.0, 2.0, 4.0])
        fom = normal_fom_from_eigenvalues(lam, seed=23)
        rng = np.random.default_rng(24)
        M = rng.standard_normal((3, 3))
        M = M @ M.T + 3 * np.eye(3)
        X = np.column_stack([solve_fom(fom, mu) for mu in [0.1, 0.2, 0.3j, 5.0]])
        ritz = pod_pole_baseline(X, WeightedInner(M), N=3, A=fom.A)
        np.testing.assert_allclose(np.sort_complex(ritz), np.sort_complex(lam),
                                   atol=1e-8)

    def test_rank_deficient_raises(self):
        fom = normal_fom_from_eigenvalues(np.array([1.0, 2.0, 3.0]), seed=25)
        x = solve_fom(fom, 0.5)
        X = np.column_stack([x, 2 * x, 3 * x])
        with pytest.raises(RankDeficientError):
            pod_pole_baseline(X, EuclideanInner(3), N=2, A=fom.A)


class TestPoleOrdering:
    def test_distance_then_lexicographic(self):
        poles = np.array([3.0, 1.0, -1.0, 2.0j, -2.0j, 1.0j])
        got = sort_poles_by_center(poles, center=0.0)
        np.testing.assert_allclose(got, [-1.0, 1.0j, 1.0, -2.0j, 2.0j, 3.0])

    def test_center_shift(self):
        poles = np.array([0.0, 4.0], dtype=complex)
        np.testing.assert_allclose(sort_poles_by_center(poles, center=3.0), [4.0, 0.0])
