import math
import unittest

import numpy as np

from hybrid_varswap import errors
from hybrid_varswap import moments
from tests import baseline_params


def _random_feller_params(rng):
    kappa = rng.uniform(0.5, 3.)
    theta = rng.uniform(0.01, 0.1)
    alpha = rng.uniform(0.3, 2.)
    beta = rng.uniform(0.01, 0.08)
    return baseline_params(
        kappa_star=kappa, theta_star=theta, sigma=rng.uniform(0.05, 1.) * math.sqrt(2. * kappa * theta),
        alpha_star=alpha, beta_star=beta, eta=rng.uniform(0.05, 1.) * math.sqrt(2. * alpha * beta),
        v0=rng.uniform(0.01, 0.1), r0=rng.uniform(0.01, 0.08)
    )


class SqrtProcessMomentsTestCase(unittest.TestCase):

    def test_fit_constants(self):
        params = baseline_params()
        variance = moments.process_moments(params, 'variance')
        rate = moments.process_moments(params, 'rate')

        self.assertAlmostEqual(variance.m, math.sqrt(0.05 - 0.01 / 16.), places=14)
        self.assertAlmostEqual(variance.m, 0.222205, places=6)
        self.assertAlmostEqual(rate.m, math.sqrt(0.05 - 0.0001 / 9.6), places=14)
        self.assertAlmostEqual(rate.m, 0.223584, places=5)
        self.assertAlmostEqual(variance.p, math.sqrt(0.05) - variance.m, places=14)
        self.assertGreater(variance.Q, 0)
        self.assertGreater(rate.Q, 0)

    def test_scale_functions(self):
        variance = moments.process_moments(baseline_params(), 'variance')
        self.assertEqual(variance.q(0.), 0.)
        self.assertAlmostEqual(variance.q(1.), 0.01 * (1. - math.exp(-2.)) / 8., places=15)
        self.assertAlmostEqual(variance.l, 4. * 2. * 0.05 / 0.01, places=12)
        self.assertEqual(variance.phi(0.), math.inf)
        self.assertGreater(variance.phi(1.), 0)

    def test_anchors_on_baseline(self):
        for process in moments.PROCESSES:
            m = moments.process_moments(baseline_params(), process)
            self.assertAlmostEqual(m.lam_tilde(0.), math.sqrt(0.05), places=12)
            self.assertAlmostEqual(m.lam_tilde(1.), m.lam(1.), places=12)

    def test_anchors_on_random_parameters(self):
        rng = np.random.RandomState(7)
        checked = 0
        for _ in range(100):
            params = _random_feller_params(rng)
            for process in moments.PROCESSES:
                try:
                    m = moments.process_moments(params, process)
                except errors.MomentFitError:
                    continue
                x0 = params.v0 if process == 'variance' else params.r0
                self.assertAlmostEqual(m.lam_tilde(0.), math.sqrt(x0), delta=1e-12)
                self.assertAlmostEqual(m.lam_tilde(1.), m.lam(1.), delta=1e-12)
                checked += 1
        self.assertGreater(checked, 50)

    def test_fit_monotone_and_bounded_on_baseline(self):
        ts = np.linspace(0., 10., 201)
        for process in moments.PROCESSES:
            m = moments.process_moments(baseline_params(), process)
            values = m.lam_tilde(ts)
            low, high = min(m.m, math.sqrt(m.x0)), max(m.m, math.sqrt(m.x0))
            self.assertTrue(np.all(values >= low - 1e-15))
            self.assertTrue(np.all(values <= high + 1e-15))
            self.assertTrue(np.all(np.diff(values) <= 0) or np.all(np.diff(values) >= 0))

    def test_long_run_limit(self):
        params = baseline_params()
        self.assertAlmostEqual(moments.lambda1(params, 50.), math.sqrt(0.05 - 0.01 / 16.), places=12)
        self.assertAlmostEqual(moments.lambda1(params, 50.), 0.222205, places=6)

    def test_jensen_and_decomposition(self):
        ts = np.linspace(0.01, 5., 100)
        for process in moments.PROCESSES:
            m = moments.process_moments(baseline_params(v0=0.08, r0=0.02), process)
            lam = m.lam(ts)
            mean = m.mean(ts)
            self.assertTrue(np.all(lam ** 2 <= mean))
            np.testing.assert_allclose(lam ** 2 + m.sqrt_variance(ts), mean, rtol=0, atol=1e-12)

    def test_sqrt_variance_forms(self):
        params = baseline_params()
        m = moments.process_moments(params, 'variance')
        q, l, phi = m.q(1.), m.l, m.phi(1.)

        value = moments.sqrt_variance(params, 'variance', 1.)

        self.assertGreater(value, 0)
        self.assertLessEqual(value, q)
        self.assertAlmostEqual(value, q - q * l / (2. * (l + phi)), delta=1e-12)
        self.assertAlmostEqual(value, q ** 2 * (2. * l + 4. * phi) / (4. * q * (l + phi)), delta=1e-12)
        self.assertAlmostEqual(m.sqrt_variance(1e-9), 0., places=12)

    def test_normal_moments(self):
        params = baseline_params()
        mean, var = moments.normal_moments(params, 'variance', 1.)
        self.assertAlmostEqual(mean, 0.05, delta=1e-12)
        self.assertGreater(var, 0)

        mean, var = moments.normal_moments(params, 'rate', 1.)
        m = moments.process_moments(params, 'rate')
        self.assertAlmostEqual(mean, 0.05, delta=1e-12)
        expected = m.q(1.) ** 2 * (2. * m.l + 4. * m.phi(1.))
        self.assertAlmostEqual(var / expected, 1., places=10)

    def test_non_stationary_mean(self):
        params = baseline_params(v0=0.09)
        mean, _ = moments.normal_moments(params, 'variance', 0.7)
        self.assertAlmostEqual(mean, 0.05 + 0.04 * math.exp(-1.4), places=14)

    def test_deterministic_limit(self):
        for sigma in (1e-2, 1e-4, 1e-6, 0.):
            params = baseline_params(sigma=sigma, v0=0.08)
            mean, var = moments.normal_moments(params, 'variance', 1.5)
            self.assertAlmostEqual(mean, 0.08 * math.exp(-3.) + 0.05 * (1. - math.exp(-3.)), places=14)
            self.assertLessEqual(var, sigma ** 2)

    def test_zero_volatility_fit(self):
        m = moments.process_moments(baseline_params(eta=0.), 'rate')
        self.assertEqual(m.p, 0.)
        self.assertEqual(m.Q, 0.)
        self.assertAlmostEqual(m.lam_tilde(3.), math.sqrt(0.05), places=15)

    def test_rejects_non_positive_times(self):
        params = baseline_params()
        for fn in (lambda t: moments.lambda1(params, t), lambda t: moments.lambda2(params, t),
                   lambda t: moments.sqrt_variance(params, 'rate', t),
                   lambda t: moments.normal_moments(params, 'variance', t),
                   lambda t: moments.product_moment(params, t)):
            with self.assertRaises(ValueError):
                fn(0.)
            with self.assertRaises(ValueError):
                fn(-1.)
        with self.assertRaises(ValueError):
            moments.lambda1_tilde(params, -0.5)

    def test_unknown_process(self):
        with self.assertRaises(ValueError):
            moments.process_moments(baseline_params(), 'spot')

    def test_imaginary_fit_level(self):
        m_params = baseline_params()
        with self.assertRaises(errors.MomentFitError):
            moments.SqrtProcessMoments(m_params.kappa_star, 0.001, 0.5, 0.05)


class ProductMomentTestCase(unittest.TestCase):

    def test_uncorrelated(self):
        params = baseline_params()
        value = moments.product_moment(params, 0.5, rho_prod=0.)
        expected = moments.lambda1_tilde(params, 0.5) * moments.lambda2_tilde(params, 0.5)
        self.assertAlmostEqual(value, expected, places=15)

    def test_start_value(self):
        curves = moments.MomentCurves(baseline_params())
        self.assertAlmostEqual(curves.product_moment(0.), 0.05, places=14)
        self.assertAlmostEqual(moments.product_moment(baseline_params(), 1e-10), 0.05, places=8)

    def test_cauchy_schwarz_bound(self):
        params = baseline_params()
        value = moments.product_moment(params, 0.5, rho_prod=0.5)
        centre = moments.lambda1_tilde(params, 0.5) * moments.lambda2_tilde(params, 0.5)
        spread = math.sqrt(moments.sqrt_variance(params, 'variance', 0.5) * moments.sqrt_variance(params, 'rate', 0.5))
        self.assertGreater(value, centre - spread)
        self.assertLess(value, centre + spread)
        self.assertAlmostEqual(value, centre + 0.5 * spread, places=15)

    def test_default_correlation(self):
        curves = moments.MomentCurves(baseline_params(rho23=-0.3))
        self.assertEqual(curves.rho_prod, -0.3)

    def test_full_convention(self):
        params = baseline_params()
        curves = moments.MomentCurves(params, rho_prod=0., convention='full')
        self.assertAlmostEqual(curves.product_moment(0.5),
                               moments.lambda1(params, 0.5) * moments.lambda2(params, 0.5), places=15)

    def test_vectorized(self):
        curves = moments.MomentCurves(baseline_params())
        ts = np.array([0., 0.25, 1.])
        values = curves.product_moment(ts)
        self.assertEqual(values.shape, (3,))
        self.assertAlmostEqual(values[2], curves.product_moment(1.), places=15)

    def test_unknown_convention(self):
        with self.assertRaises(errors.SettingsError):
            moments.MomentCurves(baseline_params(), convention='exact')
