import math
import unittest
import torch

from hybrid_varswap import functional as hvF
from tests import baseline_contract


class RealizedVarianceTestCase(unittest.TestCase):

    def test_constant_prices(self):
        contract = baseline_contract(n_obs=4)
        res = hvF.realized_variance(torch.ones(5), contract)
        self.assertEqual(res.item(), 0.)

    def test_known_path(self):
        contract = baseline_contract(n_obs=2)
        res = hvF.realized_variance([100., 110., 99.], contract)
        self.assertAlmostEqual(res.item(), 200., places=10)

    def test_annualization(self):
        contract = baseline_contract(n_obs=2, maturity=0.5)
        res = hvF.realized_variance([100., 110., 99.], contract)
        self.assertAlmostEqual(res.item(), 400., places=10)

    def test_batched(self):
        contract = baseline_contract(n_obs=2)
        observations = torch.tensor([[100., 110., 99.], [1., 1., 1.], [2., 1., 2.]], dtype=torch.float64)

        res = hvF.realized_variance(observations, contract)

        self.assertEqual(res.shape, (3,))
        self.assertAlmostEqual(res[0].item(), 200., places=10)
        self.assertEqual(res[1].item(), 0.)
        self.assertAlmostEqual(res[2].item(), 1e4 * (0.25 + 1.), places=8)
        self.assertEqual(res.dtype, torch.float64)

    def test_from_log_matches(self):
        contract = baseline_contract(n_obs=4)
        observations = torch.tensor([[1., 1.02, 0.97, 1.01, 1.05], [3., 2.5, 2.7, 2.9, 3.3]], dtype=torch.float64)

        res = hvF.realized_variance_from_log(torch.log(observations), contract)

        self.assertTrue(torch.allclose(res, hvF.realized_variance(observations, contract), rtol=1e-12, atol=0))

    def test_wrong_observation_count(self):
        with self.assertRaises(ValueError):
            hvF.realized_variance([1., 1.1, 1.2], baseline_contract(n_obs=4))
        with self.assertRaises(ValueError):
            hvF.realized_variance_from_log(torch.zeros(2, 4), baseline_contract(n_obs=4))

    def test_non_positive_prices(self):
        with self.assertRaises(ValueError):
            hvF.realized_variance([1., 0., 1.], baseline_contract(n_obs=2))
        with self.assertRaises(ValueError):
            hvF.realized_variance([1., -1., 1.], baseline_contract(n_obs=2))


class PositivePartTestCase(unittest.TestCase):

    def test_positive_part(self):
        t = torch.tensor([-1., 0., 2.5, -math.inf])
        res = hvF.positive_part(t)
        self.assertListEqual(res.tolist(), [0., 0., 2.5, 0.])
