import math

import numpy as np
import pytest

from framemeasures import (
    WhiteNoiseEnsemble,
    build_frame,
    char_functional_check,
    empirical_covariance,
    gaussian_process_from_frame,
    gram,
    ito_isometry_check,
    joint_density,
    mc_estimate,
    moment_check,
    pairing,
    pairings,
    projection_check,
    reconstruct_mc,
    synthesis_mc,
)
from framemeasures.errors import (
    DimensionExceedsTruncation,
    KTooLarge,
    LengthMismatch,
    SingularGramian,
)
from framemeasures.frames import GramMatrix
from conftest import unit


class TestEnsemble:
    def test_deterministic(self):
        a = WhiteNoiseEnsemble.generate(4, 1000, seed=1)
        b = WhiteNoiseEnsemble.generate(4, 1000, seed=1)
        np.testing.assert_array_equal(a.samples, b.samples)

    def test_prefix_property(self):
        big = WhiteNoiseEnsemble.generate(4, 70_000, seed=2)  # spans two blocks
        small = WhiteNoiseEnsemble.generate(4, 35_000, seed=2)
        np.testing.assert_array_equal(big.samples[:35_000], small.samples)
        np.testing.assert_array_equal(big.restrict(35_000).samples, small.samples)

    def test_worker_count_invariance(self):
        a = WhiteNoiseEnsemble.generate(3, 200_000, seed=3, workers=1)
        b = WhiteNoiseEnsemble.generate(3, 200_000, seed=3, workers=4)
        np.testing.assert_array_equal(a.samples, b.samples)

    def test_sanity_band(self, ens_small):
        m = ens_small.sample_count
        assert np.abs(ens_small.samples.mean(axis=0)).max() <= 5 / math.sqrt(m)
        assert np.abs(ens_small.samples.var(axis=0, ddof=1) - 1).max() <= 5 * math.sqrt(2 / m)

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            WhiteNoiseEnsemble.generate(0, 10, seed=0)
        with pytest.raises(ValueError):
            WhiteNoiseEnsemble.generate(4, 0, seed=0)


class TestPairing:
    def test_zero(self):
        assert pairing([0.0, 0.0], [2.0, -1.0]) == 0.0

    def test_coordinate_extraction(self):
        assert pairing([1.0], [2.0, -1.0, 5.0]) == 2.0

    def test_bilinearity(self):
        rng = np.random.default_rng(0)
        x, y, w = rng.normal(size=(3, 6))
        assert pairing(x + y, w) == pytest.approx(pairing(x, w) + pairing(y, w), rel=1e-12)

    def test_truncation_guard(self, ens_small):
        with pytest.raises(DimensionExceedsTruncation):
            pairings(np.ones(17), ens_small)


class TestItoIsometry:
    def test_zero_vector(self, ens_small):
        est = ito_isometry_check(np.zeros(4), ens_small)
        assert est.value == 0.0 and est.target == 0.0 and est.z_score == 0.0

    def test_unit_vector_band(self, ens_small):
        # chi-square(1) variance 2 gives the CLT band 3*sqrt(2/M)
        x = unit([1.0, 2.0, -1.0, 0.5])
        est = ito_isometry_check(x, ens_small)
        assert abs(est.value - 1.0) <= 3 * math.sqrt(2 / ens_small.sample_count)
        assert abs(est.z_score) <= 4

    def test_exact_quadratic_scaling(self, ens_small):
        x = np.array([0.5, -1.0, 0.25, 0.0])
        a = ito_isometry_check(x, ens_small)
        b = ito_isometry_check(2.0 * x, ens_small)
        assert b.value == 4.0 * a.value  # doubling is exact in binary


class TestCharFunctional:
    def test_zero_vector_exact(self, ens_small):
        re, im = char_functional_check(np.zeros(3), ens_small)
        assert re.value == 1.0 and im.value == 0.0

    def test_unit_norm_target(self, ens_small):
        re, im = char_functional_check(unit([1.0, 1.0, 1.0]), ens_small)
        assert re.target == pytest.approx(math.exp(-0.5))
        assert abs(re.z_score) <= 4 and abs(im.z_score) <= 4

    def test_norm_sq_two_target(self, ens_small):
        x = math.sqrt(2.0) * unit([2.0, -1.0, 0.0, 1.0])
        re, _ = char_functional_check(x, ens_small)
        assert re.target == pytest.approx(math.exp(-1.0))
        assert abs(re.z_score) <= 4


class TestMoments:
    @pytest.mark.parametrize("order,coef", [(2, 1.0), (4, 3.0), (6, 15.0)])
    def test_even_targets(self, ens_small, order, coef):
        x = unit([1.0, -2.0, 0.5, 3.0])
        est = moment_check(x, order, ens_small)
        assert est.target == pytest.approx(coef)
        assert abs(est.z_score) <= 4

    @pytest.mark.parametrize("order", [1, 3, 5])
    def test_odd_targets_zero(self, ens_small, order):
        est = moment_check(unit([0.3, 0.1, -0.7]), order, ens_small)
        assert est.target == 0.0
        assert abs(est.z_score) <= 4

    def test_norm_scaling(self, ens_small):
        est = moment_check(2.0 * unit([1.0, 1.0]), 2, ens_small)
        assert est.target == pytest.approx(4.0)

    def test_order_cap(self, ens_small):
        with pytest.raises(KTooLarge):
            moment_check([1.0], 10, ens_small)
        with pytest.raises(KTooLarge):
            moment_check([1.0], 0, ens_small)


class TestGaussianProcess:
    def test_onb_columns_uncorrelated(self, onb2, ens_small):
        proc = gaussian_process_from_frame(onb2, ens_small)
        m = ens_small.sample_count
        cross = empirical_covariance(proc)[0, 1]
        assert abs(cross) <= 3 / math.sqrt(m)

    def test_mb_covariance_entry(self, mb, ens_small):
        # Isserlis: Var(Z_j Z_k) = 1 + rho^2 for unit-variance pair
        proc = gaussian_process_from_frame(mb, ens_small)
        m = ens_small.sample_count
        cov01 = empirical_covariance(proc)[0, 1]
        band = 3 * math.sqrt(1 + 0.25) / math.sqrt(m)
        assert abs(cov01 - (-0.5)) <= band

    def test_single_vector_variance(self, ens_small):
        f = build_frame([[2.0, 0.0, 1.0]])
        proc = gaussian_process_from_frame(f, ens_small)
        m = ens_small.sample_count
        var = float((proc[:, 0] ** 2).mean())
        # single-sample variance of <phi, w>^2 is 2 ||phi||^4
        assert abs(var - 5.0) <= 3 * math.sqrt(2.0) * 5.0 / math.sqrt(m)

    def test_covariance_frobenius(self, mb, ens_small):
        proc = gaussian_process_from_frame(mb, ens_small)
        dist = np.linalg.norm(empirical_covariance(proc) - gram(mb).entries)
        assert dist <= 5 * mb.n_frame / math.sqrt(ens_small.sample_count)


class TestJointDensity:
    def test_standard_normal_at_zero(self):
        g = GramMatrix(entries=np.eye(1))
        assert joint_density(g, [0.0]) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-12)

    def test_bivariate_at_zero(self):
        g = GramMatrix(entries=np.eye(2))
        assert joint_density(g, [0.0, 0.0]) == pytest.approx(1 / (2 * math.pi), rel=1e-12)

    def test_singular_mb_gramian(self, mb):
        with pytest.raises(SingularGramian):
            joint_density(gram(mb), [0.0, 0.0, 0.0])

    def test_zero_point_closed_form(self):
        rng = np.random.default_rng(33)
        a = rng.normal(size=(3, 3))
        g = GramMatrix(entries=a @ a.T + np.eye(3))
        det = float(np.linalg.det(g.entries))
        expected = det**-0.5 * (2 * math.pi) ** -1.5
        assert joint_density(g, np.zeros(3)) == pytest.approx(expected, rel=1e-12)

    def test_integrates_to_one_2d(self):
        g = GramMatrix(entries=np.array([[1.0, 0.4], [0.4, 0.8]]))
        xs = np.linspace(-8, 8, 401)
        h = xs[1] - xs[0]
        grid = np.array([[joint_density(g, [a, b]) for b in xs] for a in xs])
        mass = grid.sum() * h * h
        assert mass == pytest.approx(1.0, abs=1e-3)


class TestSynthesisReconstruction:
    def test_zero_function(self, ens_small):
        out = synthesis_mc(np.zeros(ens_small.sample_count), ens_small)
        np.testing.assert_array_equal(out, np.zeros(16))

    def test_constant_one_targets_mean(self, ens_small):
        out = synthesis_mc(np.ones(ens_small.sample_count), ens_small)
        assert np.abs(out).max() <= 3 / math.sqrt(ens_small.sample_count)

    def test_length_guard(self, ens_small):
        with pytest.raises(LengthMismatch):
            synthesis_mc(np.ones(10), ens_small)

    def test_reconstruct_zero_exact(self, ens_small):
        x_hat, err = reconstruct_mc(np.zeros(4), ens_small)
        assert err == 0.0
        np.testing.assert_array_equal(x_hat, np.zeros(16))

    def test_reconstruct_error_band(self, ens_small):
        # Isserlis oracle: E||<x,w>w - x||^2 = (D+1)||x||^2
        x = np.zeros(16)
        x[:4] = unit([1.0, 2.0, 3.0, 4.0])
        _, err = reconstruct_mc(x, ens_small)
        assert err <= 3 * math.sqrt(17 / ens_small.sample_count)

    def test_reconstruct_linearity(self, ens_small):
        rng = np.random.default_rng(2)
        x, y = rng.normal(size=(2, 5))
        hx, _ = reconstruct_mc(x, ens_small)
        hy, _ = reconstruct_mc(y, ens_small)
        hxy, _ = reconstruct_mc(x + y, ens_small)
        np.testing.assert_allclose(hxy, hx + hy, rtol=1e-12, atol=1e-14)

    def test_adjointness_at_sample_level(self, ens_small):
        rng = np.random.default_rng(3)
        f = rng.normal(size=ens_small.sample_count)
        x = rng.normal(size=16)
        lhs = float(f @ pairings(x, ens_small)) / ens_small.sample_count
        rhs = float(synthesis_mc(f, ens_small) @ x)
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestProjection:
    def test_zero_case(self, ens_small):
        est = projection_check(np.zeros(3), np.zeros(3), ens_small)
        assert est.value == 0.0 and est.target == 0.0

    def test_range_idempotence(self, ens_small):
        y = unit([1.0, -1.0, 2.0])
        est = projection_check(y, y, ens_small)
        assert est.target == pytest.approx(1.0)
        assert abs(est.z_score) <= 4

    def test_orthogonal_probe(self, ens_small):
        est = projection_check([1.0, 0.0], [0.0, 1.0], ens_small)
        assert est.target == 0.0
        assert abs(est.z_score) <= 4


class TestMcEstimate:
    def test_fields(self):
        est = mc_estimate(np.array([1.0, 2.0, 3.0]), target=2.0)
        assert est.value == 2.0
        assert est.sample_count == 3
        assert est.std_error == pytest.approx(1.0 / math.sqrt(3))
        assert est.z_score == 0.0

    def test_degenerate_zero_spread(self):
        est = mc_estimate(np.full(10, 5.0), target=5.0)
        assert est.std_error == 0.0 and est.z_score == 0.0
        est = mc_estimate(np.full(10, 5.0), target=4.0)
        assert est.z_score == math.inf
