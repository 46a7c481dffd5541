import json
import math
import numbers

import numpy as np

from collections import namedtuple

from . import errors

PARAM_KEYS = (
    'kappa_star', 'theta_star', 'sigma', 'alpha_star', 'beta_star', 'eta',
    'rho12', 'rho13', 'rho23', 'v0', 'r0', 's0'
)
CONTRACT_KEYS = ('maturity', 'n_obs')
CONFIG_KEYS = PARAM_KEYS + CONTRACT_KEYS

# Volatility parameters may be zero (deterministic limit); everything else must be strictly positive.
_NON_NEGATIVE_KEYS = ('sigma', 'eta')
_POSITIVE_KEYS = ('kappa_star', 'theta_star', 'alpha_star', 'beta_star', 'v0', 'r0', 's0')
_CORRELATION_KEYS = ('rho12', 'rho13', 'rho23')

PSD_TOLERANCE = 1e-12


class ModelParams(namedtuple('ModelParams', PARAM_KEYS)):
    """
    Risk-neutral parameters of the Heston-CIR hybrid model together with the initial state of asset, variance and
    short rate. Instances are immutable.
    """

    __slots__ = ()

    @classmethod
    def from_dict(cls, d):
        """
        Builds the parameters from a dict holding at least the model keys. Extra keys are ignored.

        :param d: Dict of numeric values.
        :return: ModelParams object.
        """

        return cls(**{k: float(d[k]) for k in PARAM_KEYS})

    def to_dict(self):
        return dict(self._asdict())

    def replace(self, **kwargs):
        """
        Returns a copy with some of the fields replaced.
        """

        return self._replace(**{k: float(v) for k, v in kwargs.items()})

    def correlation_matrix(self):
        """
        :return: 3x3 numpy array with the correlations of the (asset, variance, rate) drivers.
        """

        return np.array([
            [1., self.rho12, self.rho13],
            [self.rho12, 1., self.rho23],
            [self.rho13, self.rho23, 1.]
        ])


class SwapContract(namedtuple('SwapContract', ('maturity', 'n_obs', 'notional'))):
    """
    Discretely sampled variance swap with equally spaced observation dates t_j = j * T / N.
    """

    __slots__ = ()

    def __new__(cls, maturity, n_obs, notional=1.0):
        return super(SwapContract, cls).__new__(cls, maturity, n_obs, notional)

    @property
    def dt(self):
        return self.maturity / self.n_obs

    @property
    def af(self):
        """
        Annualization factor, observations per year.
        """

        return self.n_obs / self.maturity

    def observation_times(self):
        """
        :return: Numpy array with the N + 1 observation dates t_0 = 0, ..., t_N = T.
        """

        return np.linspace(0., self.maturity, self.n_obs + 1)

    def payoff(self, realized_variance, strike):
        """
        Value of the swap at maturity.

        :param realized_variance: Realized variance in variance points.
        :param strike: Delivery price in variance points.
        :return: (RV - K) * notional.
        """

        return (realized_variance - strike) * self.notional

    def to_dict(self):
        return {'maturity': self.maturity, 'n_obs': self.n_obs, 'notional': self.notional}


class CorrelationFactor(object):
    """
    Lower triangular Cholesky factor L of the correlation matrix of the three Brownian drivers.
    """

    def __init__(self, matrix):
        """
        :param matrix: 3x3 lower triangular array.
        """

        super(CorrelationFactor, self).__init__()
        self._matrix = np.array(matrix, dtype=np.float64)
        self._matrix.setflags(write=False)

    @property
    def matrix(self):
        return self._matrix

    def correlation(self):
        """
        :return: L L^T.
        """

        return self._matrix @ self._matrix.T

    def __getitem__(self, item):
        return self._matrix[item]

    def __repr__(self):
        return 'CorrelationFactor(%s)' % np.array2string(self._matrix, precision=6)


def _check_finite(name, value):
    if not isinstance(value, numbers.Real) or not math.isfinite(value):
        raise errors.ValidationError('%s must be a finite real number, got %r' % (name, value), code='non_finite')


def validate_params(raw):
    """
    Checks every invariant of the model parameters.

    :param raw: ModelParams object.
    :return: The same object if all checks pass.
    """

    for name in PARAM_KEYS:
        _check_finite(name, getattr(raw, name))

    for name in _POSITIVE_KEYS:
        if getattr(raw, name) <= 0:
            raise errors.NegativeParameterError('%s must be strictly positive, got %r' % (name, getattr(raw, name)))
    for name in _NON_NEGATIVE_KEYS:
        if getattr(raw, name) < 0:
            raise errors.NegativeParameterError('%s must be non-negative, got %r' % (name, getattr(raw, name)))

    for name in _CORRELATION_KEYS:
        if not -1. <= getattr(raw, name) <= 1.:
            raise errors.CorrelationRangeError('%s must lie in [-1, 1], got %r' % (name, getattr(raw, name)))

    eigenvalues = np.linalg.eigvalsh(raw.correlation_matrix())
    if eigenvalues.min() < -PSD_TOLERANCE:
        raise errors.CorrelationNotPSDError(
            'Correlation matrix is not positive semi-definite (smallest eigenvalue %.6g)' % eigenvalues.min()
        )

    if 2. * raw.kappa_star * raw.theta_star < raw.sigma ** 2:
        raise errors.FellerVarianceError(
            'Feller condition for the variance fails: 2*%g*%g < %g^2' % (raw.kappa_star, raw.theta_star, raw.sigma)
        )
    if 2. * raw.alpha_star * raw.beta_star < raw.eta ** 2:
        raise errors.FellerRateError(
            'Feller condition for the rate fails: 2*%g*%g < %g^2' % (raw.alpha_star, raw.beta_star, raw.eta)
        )

    return raw


def validate_contract(contract):
    """
    :param contract: SwapContract object.
    :return: The same object if maturity, observation count and notional are admissible.
    """

    if isinstance(contract.n_obs, bool) or not isinstance(contract.n_obs, numbers.Integral) or contract.n_obs < 1:
        raise errors.ContractError('n_obs must be a positive integer, got %r' % (contract.n_obs,))
    if not isinstance(contract.maturity, numbers.Real) or not math.isfinite(contract.maturity) \
            or contract.maturity <= 0:
        raise errors.ContractError('maturity must be a positive number of years, got %r' % (contract.maturity,))
    if not isinstance(contract.notional, numbers.Real) or not math.isfinite(contract.notional) \
            or contract.notional <= 0:
        raise errors.ContractError('notional must be positive, got %r' % (contract.notional,))
    return contract


def cholesky_factor(rho12, rho13, rho23):
    """
    Closed-form Cholesky factor of the 3x3 correlation matrix.

    :param rho12: Asset-variance correlation.
    :param rho13: Asset-rate correlation.
    :param rho23: Variance-rate correlation.
    :return: CorrelationFactor object.
    """

    radicand_22 = 1. - rho12 ** 2
    if radicand_22 <= 0:
        raise errors.CholeskyError('Cholesky factor requires |rho12| < 1, got %r' % rho12)
    l22 = math.sqrt(radicand_22)
    l32 = (rho23 - rho13 * rho12) / l22
    radicand_33 = 1. - rho13 ** 2 - l32 ** 2
    if radicand_33 <= 0:
        raise errors.CholeskyError('Correlation matrix is not strictly positive definite')

    return CorrelationFactor([
        [1., 0., 0.],
        [rho12, l22, 0.],
        [rho13, l32, math.sqrt(radicand_33)]
    ])


def _parse_number(key, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise errors.ConfigError('Config key %r must be a number, got %r' % (key, value))
    if not math.isfinite(value):
        raise errors.ConfigError('Config key %r must be finite, got %r' % (key, value))
    return value


def parse_config(d):
    """
    Builds parameters and contract from a flat dict with exactly the config keys.

    :param d: Dict loaded from JSON.
    :return: Tuple (ModelParams, SwapContract).
    """

    if not isinstance(d, dict):
        raise errors.ConfigError('Config must be a JSON object')

    missing = [k for k in CONFIG_KEYS if k not in d]
    unknown = sorted(k for k in d if k not in CONFIG_KEYS)
    if missing:
        raise errors.ConfigError('Missing config keys: %s' % ', '.join(missing))
    if unknown:
        raise errors.ConfigError('Unknown config keys: %s' % ', '.join(unknown))

    values = {k: _parse_number(k, d[k]) for k in CONFIG_KEYS}
    n_obs = values['n_obs']
    if float(n_obs) != int(n_obs):
        raise errors.ConfigError('n_obs must be an integer, got %r' % n_obs)

    params = ModelParams.from_dict(values)
    contract = SwapContract(float(values['maturity']), int(n_obs))
    return params, contract


def load_config(path):
    """
    Reads a JSON config file.

    :param path: Path of the file.
    :return: Tuple (ModelParams, SwapContract).
    """

    try:
        with open(path, 'r') as fr:
            d = json.load(fr)
    except (OSError, ValueError) as e:
        raise errors.ConfigError('Cannot read config %s: %s' % (path, e))

    return parse_config(d)
