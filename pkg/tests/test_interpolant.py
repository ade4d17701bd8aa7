"""The rational surrogate: Gramian factor, denominator, evaluation, poles."""

import numpy as np
import pytest

from mrinterp.errors import DimensionMismatchError, EmptyApproxError
from mrinterp.interpolant import (
    MRIConfig,
    build,
    build_gramian_factor,
    minimal_denominator,
    pole_matching_error,
)
from mrinterp.polybasis import ChebyshevSegmentBasis, PolyCoeffs, ShiftedMonomialBasis, eval_poly
from mrinterp.sampling import Disk, custom_nodes, fejer_nodes, nodal_poly_eval
from mrinterp.snapshots import EuclideanInner, SnapshotBasis, orthonormalize
from mrinterp.testbeds import eval_meromorphic, random_orthogonal_map


def monomial(deg, center=0.0):
    return ShiftedMonomialBasis(center=center, max_degree=deg)


def single_pole_setup():
    nodes = custom_nodes([1.0, -1.0])
    v = np.zeros(3, dtype=complex)
    v[0] = 1.0
    snaps = np.column_stack([v / (2.0 - mu) for mu in nodes.nodes])
    return nodes, v, snaps


class TestGramianFactor:
    def test_single_pole_worked_example(self):
        nodes, _, snaps = single_pole_setup()
        snap = orthonormalize(EuclideanInner(3), snaps)
        factor = build_gramian_factor(snap, nodes, MRIConfig(N=1, basis=monomial(1)))
        assert factor.shape == (1, 2)  # rank-1 snapshots
        np.testing.assert_allclose(factor, [[1.0 / 3.0, 2.0 / 3.0]], atol=1e-14)

    def test_constant_snapshots_zero_column(self):
        # interpolating a constant with S >= 2 has zero leading coefficient
        nodes = fejer_nodes(Disk(0.0, 1.0), 4)
        v = np.array([1.0, 2.0], dtype=complex)
        snaps = np.tile(v[:, None], (1, 4))
        snap = orthonormalize(EuclideanInner(2), snaps)
        factor = build_gramian_factor(snap, nodes, MRIConfig(N=0, basis=monomial(1)))
        np.testing.assert_allclose(factor, 0.0, atol=1e-14)

    def test_zero_coordinates_give_zero_factor(self):
        nodes = custom_nodes([0.0, 1.0, 2.0])
        snap = SnapshotBasis(
            inner=EuclideanInner(2),
            phi=np.eye(2, dtype=complex),
            W=np.zeros((3, 2), dtype=complex),
            rank=2,
        )
        factor = build_gramian_factor(snap, nodes, MRIConfig(N=1, basis=monomial(1)))
        np.testing.assert_allclose(factor, 0.0)

    def test_degree_budget_enforced(self):
        nodes, _, snaps = single_pole_setup()
        snap = orthonormalize(EuclideanInner(3), snaps)
        with pytest.raises(ValueError):
            build_gramian_factor(snap, nodes, MRIConfig(N=2, basis=monomial(2)))


class TestMinimalDenominator:
    def test_worked_example(self):
        q, sigma_min, _ = minimal_denominator(np.array([[1.0 / 3.0, 2.0 / 3.0]]))
        np.testing.assert_allclose(q, np.array([2.0, -1.0]) / np.sqrt(5.0), atol=1e-14)
        assert sigma_min == pytest.approx(0.0, abs=1e-15)

    def test_identity_factor(self):
        q, sigma_min, sigma_gap = minimal_denominator(np.eye(2))
        assert sigma_min == pytest.approx(1.0)
        assert sigma_gap == pytest.approx(1.0)
        assert np.linalg.norm(q) == pytest.approx(1.0)

    def test_all_zero_factor_canonical(self):
        q, sigma_min, sigma_gap = minimal_denominator(np.zeros((3, 4)))
        np.testing.assert_allclose(q, [1.0, 0.0, 0.0, 0.0])
        assert sigma_min == 0.0
        assert sigma_gap == 1.0

    def test_single_column(self):
        q, sigma_min, sigma_gap = minimal_denominator(np.array([[3.0], [4.0]]))
        assert sigma_min == pytest.approx(5.0)
        assert sigma_gap == 1.0
        assert abs(q[0] - 1.0) < 1e-14

    def test_phase_fix_real_positive_pivot(self):
        rng = np.random.default_rng(51)
        for _ in range(20):
            A = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
            q, _, _ = minimal_denominator(A)
            pivot = np.abs(q).argmax()
            assert q[pivot].imag == pytest.approx(0.0, abs=1e-14)
            assert q[pivot].real > 0

    def test_minimizes_over_random_candidates(self):
        rng = np.random.default_rng(52)
        A = rng.standard_normal((8, 5)) + 1j * rng.standard_normal((8, 5))
        q, sigma_min, _ = minimal_denominator(A)
        assert np.linalg.norm(A @ q) == pytest.approx(sigma_min, rel=1e-12)
        for _ in range(100):
            z = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            z /= np.linalg.norm(z)
            assert np.linalg.norm(A @ z) >= sigma_min * (1 - 1e-12)

    def test_unit_norm(self):
        rng = np.random.default_rng(53)
        A = rng.standard_normal((3, 7)) + 1j * rng.standard_normal((3, 7))
        q, _, _ = minimal_denominator(A)
        assert np.linalg.norm(q) == pytest.approx(1.0, rel=1e-13)


class TestBuildAndEvaluate:
    def test_single_pole_chain(self):
        nodes, v, snaps = single_pole_setup()
        interp = build(snaps, EuclideanInner(3), nodes, MRIConfig(N=1, basis=monomial(1)))
        roots, n_inf = interp.poles()
        np.testing.assert_allclose(roots, [2.0], atol=1e-13)
        assert n_inf == 0
        np.testing.assert_allclose(interp.evaluate(0.0), v / 2.0, atol=1e-14)
        assert interp.sigma_min == pytest.approx(0.0, abs=1e-14)

    def test_exact_at_nodes(self):
        rng = np.random.default_rng(61)
        m = random_orthogonal_map(20, poles=[1.5 + 0.2j, -2.0, 0.5j + 2.0], seed=3)
        nodes = fejer_nodes(Disk(0.0, 1.0), 7)
        snaps = eval_meromorphic(m, nodes.nodes)
        interp = build(snaps, EuclideanInner(20), nodes, MRIConfig(N=3, basis=monomial(3)))
        for j, mu in enumerate(nodes.nodes):
            np.testing.assert_allclose(interp.evaluate(mu), snaps[:, j], atol=1e-12)

    def test_constant_surrogate_single_node(self):
        nodes = custom_nodes([0.5])
        v = np.array([1.0, -2.0], dtype=complex)
        interp = build(v[:, None], EuclideanInner(2), nodes, MRIConfig(N=0, basis=monomial(0)))
        np.testing.assert_allclose(interp.evaluate(0.5), v, atol=1e-14)
        np.testing.assert_allclose(interp.evaluate(10.0 + 3.0j), v, atol=1e-12)

    def test_linear_reproduction_degree_zero_denominator(self):
        # N = 0 turns the surrogate into plain polynomial interpolation
        nodes = custom_nodes([0.0, 1.0])
        u0 = np.array([1.0, 0.0], dtype=complex)
        u1 = np.array([1.0, 1.0], dtype=complex)
        snaps = np.column_stack([u0, u1])
        interp = build(snaps, EuclideanInner(2), nodes, MRIConfig(N=0, basis=monomial(0)))
        np.testing.assert_allclose(interp.evaluate(0.5), (u0 + u1) / 2.0, atol=1e-13)
        np.testing.assert_allclose(interp.evaluate(0.25), 0.75 * u0 + 0.25 * u1, atol=1e-13)

    def test_near_pole_flag(self):
        nodes, _, snaps = single_pole_setup()
        interp = build(snaps, EuclideanInner(3), nodes, MRIConfig(N=1, basis=monomial(1)))
        _, near = interp.evaluate_info(2.0 + 1e-15)
        assert near
        _, far = interp.evaluate_info(0.3)
        assert not far

    def test_mismatched_snapshot_count(self):
        nodes, _, snaps = single_pole_setup()
        with pytest.raises(DimensionMismatchError):
            build(snaps[:, :1], EuclideanInner(3), nodes, MRIConfig(N=1, basis=monomial(1)))


class TestExactRecovery:
    @pytest.mark.parametrize("seed", range(5))
    def test_recovers_rational_maps(self, seed):
        rng = np.random.default_rng(100 + seed)
        P = int(rng.integers(2, 7))
        # poles in the unit disk, off the boundary nodes
        poles = 0.2 + 0.7 * rng.uniform(0.2, 1.0, P) * np.exp(2j * np.pi * rng.uniform(0, 1, P))
        poles = np.unique(poles)
        P = poles.size
        m = random_orthogonal_map(30, poles, norms=rng.uniform(0.5, 2.0, P), seed=seed)
        S = P + 1
        nodes = fejer_nodes(Disk(0.0, 1.0), S)
        snaps = eval_meromorphic(m, nodes.nodes)
        interp = build(snaps, EuclideanInner(30), nodes, MRIConfig(N=P, basis=monomial(P)))
        assert interp.sigma_min <= 1e-10 * max(1.0, np.abs(interp.factor).max())
        roots, _ = interp.poles()
        assert pole_matching_error(poles, roots).max() < 1e-8
        # values match off the nodes as well
        for mu in rng.uniform(-0.9, 0.9, 10) + 1j * rng.uniform(-0.9, 0.9, 10):
            if np.min(np.abs(mu - poles)) < 0.1:
                continue
            u = eval_meromorphic(m, mu)
            assert np.linalg.norm(interp.evaluate(mu) - u) < 1e-8 * np.linalg.norm(u)


class TestJFunctional:
    def test_matches_sigma_min(self):
        rng = np.random.default_rng(71)
        m = random_orthogonal_map(25, poles=[1.8, -1.3 + 0.4j, 2.5j], seed=9)
        nodes = fejer_nodes(Disk(0.0, 1.0), 9)
        snaps = eval_meromorphic(m, nodes.nodes)
        interp = build(snaps, EuclideanInner(25), nodes, MRIConfig(N=4, basis=monomial(4)))
        assert interp.j_functional(interp.q) == pytest.approx(interp.sigma_min, rel=1e-10)

    def test_exact_denominator_annihilates(self):
        nodes, _, snaps = single_pole_setup()
        interp = build(snaps, EuclideanInner(3), nodes, MRIConfig(N=1, basis=monomial(1)))
        q_exact = PolyCoeffs(monomial(1), np.array([-2.0, 1.0]) / np.sqrt(5.0))
        assert interp.j_functional(q_exact) < 1e-14

    def test_pole_residue_identity(self):
        # the squared functional equals the weighted sum of |Q|^2/|omega|^2
        # over the poles when the residues are orthogonal
        rng = np.random.default_rng(72)
        for trial in range(10):
            P = int(rng.integers(1, 12))
            poles = rng.uniform(1.1, 3.0, P) * np.exp(2j * np.pi * rng.uniform(0, 1, P))
            norms = rng.uniform(0.3, 2.0, P)
            m = random_orthogonal_map(40, poles, norms=norms, seed=200 + trial)
            S = int(rng.integers(max(2, P // 2), 16))
            N = int(rng.integers(0, S))
            nodes = fejer_nodes(Disk(0.0, 1.0), S)
            snaps = eval_meromorphic(m, nodes.nodes)
            interp = build(snaps, EuclideanInner(40), nodes, MRIConfig(N=N, basis=monomial(max(N, 1))))
            c = rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1)
            c /= np.linalg.norm(c)
            q_any = PolyCoeffs(monomial(max(N, 1)), c)
            j_val = interp.j_functional(q_any) ** 2
            omega = nodal_poly_eval(nodes, poles)
            expected = float(np.sum(norms**2 * np.abs(eval_poly(q_any, poles)) ** 2 / np.abs(omega) ** 2))
            assert j_val == pytest.approx(expected, rel=1e-10)

    def test_wrong_basis_rejected(self):
        nodes, _, snaps = single_pole_setup()
        interp = build(snaps, EuclideanInner(3), nodes, MRIConfig(N=1, basis=monomial(1)))
        other = PolyCoeffs(ChebyshevSegmentBasis(a=-1.0, b=1.0, max_degree=1), np.array([1.0]))
        with pytest.raises(DimensionMismatchError):
            interp.j_functional(other)


class TestScaleInvariance:
    def test_denominator_invariant_under_snapshot_scaling(self):
        rng = np.random.default_rng(81)
        m = random_orthogonal_map(15, poles=[1.4, -2.2, 1.9j], seed=5)
        nodes = fejer_nodes(Disk(0.0, 1.0), 8)
        snaps = eval_meromorphic(m, nodes.nodes)
        config = MRIConfig(N=3, basis=monomial(3))
        base = build(snaps, EuclideanInner(15), nodes, config)
        c = 2.7 * np.exp(0.6j)
        scaled = build(c * snaps, EuclideanInner(15), nodes, config)
        np.testing.assert_allclose(scaled.q.coeffs, base.q.coeffs, atol=1e-12)
        assert scaled.sigma_min == pytest.approx(abs(c) * base.sigma_min, abs=1e-12)
        mu = 0.3 - 0.4j
        np.testing.assert_allclose(scaled.evaluate(mu), c * base.evaluate(mu), rtol=1e-11)


class TestPoleMatching:
    def test_values(self):
        err = pole_matching_error([1.0, 2.0], [1.1, 5.0])
        np.testing.assert_allclose(err, [0.1, 0.9])
        err = pole_matching_error([0.0], [3.0 + 4.0j])
        np.testing.assert_allclose(err, [5.0])

    def test_empty_approx_raises(self):
        with pytest.raises(EmptyApproxError):
            pole_matching_error([1.0], [])
