"""Modified likelihood ratio test: statistic, standardization and moment estimation."""
import math

import numpy as np
import pytest
from scipy.stats import norm

from techlab_simultaneous_test.exceptions import (
    CalibrationError,
    InputError,
    InvariantError,
    SampleSizeError,
)
from techlab_simultaneous_test.models.calibration import CenteringTerms, MomentParams, dimension_ratios
from techlab_simultaneous_test.models.ml_test import (
    TestConfig,
    estimate_fourth_cumulants,
    ml_statistic,
    run_ml_test,
    standardize,
    zh_statistic,
)
from techlab_simultaneous_test.models.sample import SampleSet
from techlab_simultaneous_test.models.simulation import SimulationModel, generate_pair
from techlab_simultaneous_test.models.spectrum import FisherSpectrum, QuadraticTerm

from .conftest import gamma_sample


def _spectrum(interior, zero_count=0, one_count=0):
    interior = np.asarray(interior, dtype=float)
    return FisherSpectrum(interior, zero_count, one_count, 1e-10, interior)


class TestZhStatistic:
    def test_one_half_spectrum(self):
        ratios = dimension_ratios(50, 50, 20)
        zh = zh_statistic(_spectrum(np.full(20, 0.5)), ratios)
        assert zh == pytest.approx(20 * math.log(0.5), rel=1e-14)

    def test_matches_scalar_loop(self, rng):
        ratios = dimension_ratios(30, 45, 20)
        lam = np.sort(rng.uniform(0.01, 0.99, 20))
        expected = 0.0
        for value in lam:
            expected += ratios.c1 * math.log(value) + ratios.c2 * math.log(1.0 - value)
        assert zh_statistic(_spectrum(lam), ratios) == pytest.approx(expected, rel=1e-12)

    def test_empty_interior(self):
        ratios = dimension_ratios(25, 35, 40)
        with pytest.raises(InvariantError):
            zh_statistic(_spectrum([], zero_count=20, one_count=20), ratios)

    def test_dimension_mismatch(self):
        with pytest.raises(InvariantError):
            zh_statistic(_spectrum(np.full(5, 0.5)), dimension_ratios(25, 35, 20))


class TestMlStatistic:
    def test_zero_quadratic_term(self):
        assert ml_statistic(-3.25, QuadraticTerm(0.0, 0.5)) == -3.25

    def test_log_identity(self):
        assert ml_statistic(-10.0, QuadraticTerm(math.e - 1.0, 0.5)) == pytest.approx(-11.0, rel=1e-15)

    def test_negative_quadratic_term(self):
        with pytest.raises(InvariantError):
            ml_statistic(0.0, QuadraticTerm(-1.0, 0.5))


class TestStandardize:
    def setup_method(self):
        self.ratios = dimension_ratios(200, 280, 320)
        self.terms = CenteringTerms(l_n=-0.4, mu_n=0.3, nu_n2=0.64, nu_n=0.8)
        self.center = 320 * -0.4 + 0.3 + math.log(1.0 - self.ratios.r_n)

    def test_centering_identity(self):
        z, p = standardize(self.center, self.terms, self.ratios)
        assert z == pytest.approx(0.0, abs=1e-12)
        assert p == pytest.approx(1.0)

    def test_boundary_p_value(self):
        z_crit = norm.isf(0.025)
        z, p = standardize(self.center + 0.8 * z_crit, self.terms, self.ratios)
        assert z == pytest.approx(z_crit, rel=1e-10)
        assert p == pytest.approx(0.05, rel=1e-9)

    def test_nonpositive_scale(self):
        with pytest.raises(CalibrationError):
            standardize(0.0, CenteringTerms(0.0, 0.0, 0.0, 0.0), self.ratios)

    def test_lower_tail_boundary(self):
        z_crit = norm.isf(0.05)
        z, p = standardize(self.center - 0.8 * z_crit, self.terms, self.ratios, 'less')
        assert z == pytest.approx(-z_crit, rel=1e-10)
        assert p == pytest.approx(0.05, rel=1e-9)

    def test_lower_tail_ignores_large_scores(self):
        z, p = standardize(self.center + 0.8 * 4.0, self.terms, self.ratios, 'less')
        assert z == pytest.approx(4.0, rel=1e-10)
        assert p == pytest.approx(norm.cdf(4.0), rel=1e-12)
        _z, two_sided = standardize(self.center + 0.8 * 4.0, self.terms, self.ratios)
        assert two_sided < 1e-4

    def test_unknown_alternative(self):
        with pytest.raises(InputError):
            standardize(self.center, self.terms, self.ratios, 'greater')


class TestRunMlTest:
    def test_identical_samples(self, rng):
        sample = gamma_sample(rng, 41, 20)
        report = run_ml_test(sample, sample, TestConfig())
        assert report.t_n == 0.0
        assert report.zh == pytest.approx(20 * math.log(0.5), rel=1e-10)
        again = run_ml_test(sample, sample, TestConfig())
        assert again == report

    def test_sample_swap_invariance(self, gamma_pair):
        s1, s2 = gamma_pair
        cfg = TestConfig(beta1=1.5, beta2=0.5)
        forward = run_ml_test(s1, s2, cfg)
        backward = run_ml_test(s2, s1, TestConfig(beta1=0.5, beta2=1.5))
        assert backward.statistic_L == pytest.approx(forward.statistic_L, rel=1e-10)
        assert backward.z_score == pytest.approx(forward.z_score, rel=1e-10, abs=1e-12)
        assert backward.p_value == pytest.approx(forward.p_value, rel=1e-10)
        assert backward.reject == forward.reject

    def test_report_fields(self, gamma_pair):
        report = run_ml_test(*gamma_pair, TestConfig(alpha=0.1))
        assert report.test == 'ml'
        assert report.alpha == 0.1
        assert report.reject == (report.p_value < 0.1)
        assert report.betas_used == MomentParams(0.0, 0.0, 'known')
        assert report.ratios.n1 == 25 and report.ratios.n2 == 35
        assert 0.0 <= report.p_value <= 1.0
        assert report.warnings == ()

    def test_near_unity_warning(self, rng):
        s1 = gamma_sample(rng, 26, 24)
        s2 = gamma_sample(rng, 36, 24)
        report = run_ml_test(s1, s2, TestConfig())
        assert any('near 1' in text for text in report.warnings)
        quiet = run_ml_test(s1, s2, TestConfig(warn_near_one=False))
        assert quiet.warnings == ()

    def test_near_unity_is_logged_once_per_call(self, rng, caplog):
        s1 = gamma_sample(rng, 26, 24)
        s2 = gamma_sample(rng, 36, 24)
        run_ml_test(s1, s2, TestConfig())
        assert sum('near 1' in record.getMessage() for record in caplog.records) == 1
        caplog.clear()
        run_ml_test(s1, s2, TestConfig(warn_near_one=False))
        assert not any('near 1' in record.getMessage() for record in caplog.records)

    def test_joint_affine_invariance(self, rng, gamma_pair):
        s1, s2 = gamma_pair
        q, _r = np.linalg.qr(rng.standard_normal((s1.dim, s1.dim)))
        g = q * rng.uniform(0.5, 2.0, s1.dim)
        shift = rng.standard_normal(s1.dim) * 5.0
        plain = run_ml_test(s1, s2, TestConfig())
        moved = run_ml_test(SampleSet(s1.observations @ g.T + shift), SampleSet(s2.observations @ g.T + shift),
                            TestConfig())
        assert moved.statistic_L == pytest.approx(plain.statistic_L, rel=1e-8)
        assert moved.t_n == pytest.approx(plain.t_n, rel=1e-8, abs=1e-12)
        assert moved.z_score == pytest.approx(plain.z_score, rel=1e-8, abs=1e-10)

    def test_lower_tail_shares_the_score(self, gamma_pair):
        two_sided = run_ml_test(*gamma_pair, TestConfig())
        lower = run_ml_test(*gamma_pair, TestConfig(alternative='less'))
        assert lower.z_score == two_sided.z_score
        assert lower.p_value == pytest.approx(norm.cdf(lower.z_score), rel=1e-12)
        assert lower.alternative == 'less'
        assert two_sided.alternative == 'two-sided'

    @pytest.mark.parametrize('alternative', ['two-sided', 'less'])
    @pytest.mark.parametrize('alpha', [0.01, 0.05, 0.1])
    def test_decision_matches_p_value(self, alpha, alternative):
        cfg = TestConfig(alpha=alpha, alternative=alternative, beta1=1.5, beta2=1.5)
        for seed in range(6):
            s1, s2 = generate_pair(SimulationModel('I', 25, 35, 20, a=40.0 * (seed % 2)), seed)
            report = run_ml_test(s1, s2, cfg)
            assert report.reject == (report.p_value < alpha)
            if alternative == 'less':
                assert report.reject == (report.z_score < norm.ppf(alpha))
            else:
                assert report.reject == (abs(report.z_score) > norm.isf(alpha / 2.0))

    def test_mismatched_columns(self, rng):
        with pytest.raises(InputError):
            run_ml_test(gamma_sample(rng, 20, 3), gamma_sample(rng, 20, 4), TestConfig())

    def test_separates_shifted_means(self, rng):
        s1 = gamma_sample(rng, 101, 30)
        s2 = SampleSet(gamma_sample(rng, 141, 30).observations + 1.0)
        assert run_ml_test(s1, s2, TestConfig()).reject


class TestConfigValidation:
    @pytest.mark.parametrize('alpha', [0.0, 1.0, -0.1, 1.5])
    def test_alpha_range(self, alpha):
        with pytest.raises(InputError):
            TestConfig(alpha=alpha)

    def test_beta_floor(self):
        with pytest.raises(InputError):
            TestConfig(beta1=-2.5)

    def test_moment_mode(self):
        with pytest.raises(InputError):
            TestConfig(moment_mode='guess')

    def test_alternative(self):
        assert TestConfig().alternative == 'two-sided'
        with pytest.raises(InputError):
            TestConfig(alternative='greater')


class TestFourthCumulants:
    @staticmethod
    def _cross_polytope(p, scale=1.0):
        eye = np.eye(p) * scale
        return SampleSet(np.vstack([eye, -eye]))

    def test_equal_distances_are_clipped(self, caplog):
        moments = estimate_fourth_cumulants(self._cross_polytope(3), self._cross_polytope(3))
        assert moments.beta1 == -2.0
        assert moments.beta2 == -2.0
        assert moments.clipped
        assert moments.source == 'estimated'
        assert 'clipped' in caplog.text

    def test_estimate_mode_reports_warnings(self):
        s = self._cross_polytope(3)
        report = run_ml_test(s, s, TestConfig(moment_mode='estimate'))
        assert report.betas_used.source == 'estimated'
        assert any('estimated' in text for text in report.warnings)
        assert any('clipped' in text for text in report.warnings)

    def test_joint_scale_invariance(self, rng):
        s1 = gamma_sample(rng, 60, 15)
        s2 = gamma_sample(rng, 80, 15)
        plain = estimate_fourth_cumulants(s1, s2)
        scaled = estimate_fourth_cumulants(SampleSet(3.0 * s1.observations), SampleSet(3.0 * s2.observations))
        assert scaled.beta1 == pytest.approx(plain.beta1, rel=1e-8, abs=1e-10)
        assert scaled.beta2 == pytest.approx(plain.beta2, rel=1e-8, abs=1e-10)

    def test_separates_gamma_from_gaussian(self, rng):
        gauss = [estimate_fourth_cumulants(SampleSet(rng.standard_normal((401, 100))),
                                           SampleSet(rng.standard_normal((401, 100)))) for _ in range(20)]
        gamma = [estimate_fourth_cumulants(gamma_sample(rng, 401, 100), gamma_sample(rng, 401, 100))
                 for _ in range(20)]
        for runs, beta, tolerance in ((gauss, 0.0, 0.15), (gamma, 1.5, 0.25)):
            assert abs(np.mean([m.beta1 for m in runs]) - beta) < tolerance
            assert abs(np.mean([m.beta2 for m in runs]) - beta) < tolerance

    def test_too_few_observations(self, rng):
        with pytest.raises(SampleSizeError):
            estimate_fourth_cumulants(SampleSet(rng.standard_normal((3, 2))), SampleSet(rng.standard_normal((9, 2))))
