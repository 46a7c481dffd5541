import pprint

from abc import ABC, abstractmethod
from collections import namedtuple
from tqdm.auto import tqdm

from . import errors
from .model import PARAM_KEYS
from .pricer import fair_strike

SweepPoint = namedtuple('SweepPoint', ('param', 'value', 'n_obs', 'strike', 'error'))


class AbstractSweep(ABC):
    """
    Objects of derived classes evaluate a quantity over a grid of (parameter value, observation count) cells.
    """

    def __init__(self, param, values, n_obs_list):
        """
        :param param: Name of the swept model parameter.
        :param values: Sequence of values of the parameter.
        :param n_obs_list: Sequence of observation counts.
        """

        super(AbstractSweep, self).__init__()
        if param not in PARAM_KEYS:
            raise errors.SettingsError('Unknown parameter %r' % (param,))
        if len(values) == 0 or len(n_obs_list) == 0:
            raise errors.SettingsError('A sweep needs at least one value and one observation count')
        self._param = param
        self._values = list(values)
        self._n_obs_list = list(n_obs_list)

    @property
    def param(self):
        return self._param

    def run(self, verbose=True):
        """
        Evaluates every cell. Cells failing with a validation or numerical error are recorded with the error code and
        the sweep continues.

        :param verbose: Whether to report progress.
        :return: List of SweepPoint objects ordered by value, then observation count.
        """

        points = []
        n_cells = len(self._values) * len(self._n_obs_list)
        for value in self._values:
            for n_obs in self._n_obs_list:
                if verbose:
                    tqdm.write('Cell: {0:d}/{1:d}'.format(len(points) + 1, n_cells))
                    tqdm.write(pprint.pformat({self._param: value, 'n_obs': n_obs}))
                try:
                    points.append(SweepPoint(self._param, value, n_obs, self._step(value, n_obs), None))
                except errors.ValidationError as e:
                    points.append(SweepPoint(self._param, value, n_obs, None, e.code))
                except errors.NumericalError as e:
                    points.append(SweepPoint(self._param, value, n_obs, None, type(e).__name__))
                if verbose and points[-1].error is not None:
                    tqdm.write('Cell failed: %s' % points[-1].error)

        return points

    @abstractmethod
    def _step(self, value, n_obs):
        """
        Evaluates a single cell.

        :param value: Value of the swept parameter.
        :param n_obs: Observation count.
        :return: Numeric result of the cell.
        """

        pass


class ParameterSweep(AbstractSweep):
    """
    Formula strikes over a grid of one model parameter and the observation count, all other inputs fixed.
    """

    def __init__(self, params, contract, param, values, n_obs_list, numerics=None):
        """
        :param params: Baseline ModelParams object.
        :param contract: Baseline SwapContract object; its maturity and notional are kept.
        :param param: Name of the swept model parameter.
        :param values: Sequence of values of the parameter.
        :param n_obs_list: Sequence of observation counts.
        :param numerics: Numerics object passed to the pricer.
        """

        super(ParameterSweep, self).__init__(param, values, n_obs_list)
        self._params = params
        self._contract = contract
        self._numerics = numerics

    def _step(self, value, n_obs):
        params = self._params.replace(**{self._param: value})
        contract = self._contract._replace(n_obs=n_obs)
        return fair_strike(params, contract, self._numerics).strike_variance_points
