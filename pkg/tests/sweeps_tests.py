import unittest

from unittest.mock import patch

from hybrid_varswap import errors
from hybrid_varswap import sweeps
from tests import baseline_contract, baseline_params


class ParameterSweepTestCase(unittest.TestCase):

    def test_grid_order(self):
        sweep = sweeps.ParameterSweep(baseline_params(), baseline_contract(), 'rho23', [-0.5, 0.5], [4, 12])
        points = sweep.run(verbose=False)

        self.assertEqual([(p.value, p.n_obs) for p in points], [(-0.5, 4), (-0.5, 12), (0.5, 4), (0.5, 12)])
        for point in points:
            self.assertEqual(point.param, 'rho23')
            self.assertIsNone(point.error)
            self.assertGreater(point.strike, 0)

    def test_matches_pricer(self):
        from hybrid_varswap.pricer import fair_strike

        points = sweeps.ParameterSweep(baseline_params(), baseline_contract(), 'rho13', [0.], [4]).run(verbose=False)
        expected = fair_strike(baseline_params(rho13=0.), baseline_contract(n_obs=4)).strike
        self.assertEqual(points[0].strike, expected)

    def test_invalid_cells_are_recorded(self):
        sweep = sweeps.ParameterSweep(baseline_params(), baseline_contract(), 'rho13', [0.5, 0.95], [12])
        points = sweep.run(verbose=True)

        self.assertIsNone(points[0].error)
        self.assertIsNone(points[1].strike)
        self.assertEqual(points[1].error, 'correlation_not_psd')

    def test_numerical_failures_are_recorded(self):
        sweep = sweeps.ParameterSweep(baseline_params(), baseline_contract(), 'rho13', [0.5], [4])
        with patch('hybrid_varswap.sweeps.fair_strike', side_effect=errors.IntegrationError(0.1)):
            points = sweep.run(verbose=False)
        self.assertEqual(points[0].error, 'IntegrationError')

    def test_invalid_arguments(self):
        with self.assertRaises(errors.SettingsError):
            sweeps.ParameterSweep(baseline_params(), baseline_contract(), 'lambda', [0.], [4])
        with self.assertRaises(errors.SettingsError):
            sweeps.ParameterSweep(baseline_params(), baseline_contract(), 'rho13', [], [4])
        with self.assertRaises(errors.SettingsError):
            sweeps.ParameterSweep(baseline_params(), baseline_contract(), 'rho13', [0.], [])
