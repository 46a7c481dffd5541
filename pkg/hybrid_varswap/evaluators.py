import math

import numpy as np

from abc import ABC, abstractmethod
from collections import namedtuple


class McEstimate(namedtuple('McEstimate', (
        'strike_estimate', 'std_error', 'n_paths', 'elapsed', 'steps_per_interval', 'seed', 'n_obs'))):
    """
    Monte Carlo estimate of the fair strike in variance points.
    """

    __slots__ = ()

    def to_dict(self):
        return dict(self._asdict())

    def __str__(self):
        return 'strike: %.6g +/- %.3g (%d paths, seed %d)' % (
            self.strike_estimate, self.std_error, self.n_paths, self.seed
        )


class AbstractEvaluator(ABC):
    """
    Objects of derived classes collect per-path outputs of a simulation batch by batch and reduce them to a result.
    """

    def __init__(self):
        self.reset()

    @abstractmethod
    def reset(self):
        """
        (Re)initializes the object. Called at the beginning of a simulation.
        """

        pass

    @abstractmethod
    def step(self, batch_index, values):
        """
        Gathers the outputs of a single batch. Batches must be passed in index order.

        :param batch_index: Index of the batch.
        :param values: 1D Tensor or array with one value per path.
        """

        pass

    @abstractmethod
    def calculate(self, **metadata):
        """
        Called after all batches have been processed.
        """

        pass


class RealizedVarianceEvaluator(AbstractEvaluator):
    """
    Sample mean and standard error of per-path realized variances. The reduction runs over the values concatenated in
    batch order, so the result does not depend on how batches were scheduled.
    """

    def reset(self):
        self._batches = []
        self._next_batch = 0
        # running count, mean and sum of squared deviations, merged batch by batch
        self._count = 0
        self._mean = 0.
        self._m2 = 0.

    def step(self, batch_index, values):
        assert batch_index == self._next_batch, 'Batches must be passed in order'
        if hasattr(values, 'detach'):
            values = values.detach().cpu().numpy()
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        self._batches.append(values)
        self._next_batch += 1

        if len(values) > 0:
            batch_mean = float(values.mean())
            batch_m2 = float(((values - batch_mean) ** 2).sum())
            count = self._count + len(values)
            delta = batch_mean - self._mean
            self._mean += delta * len(values) / count
            self._m2 += batch_m2 + delta ** 2 * self._count * len(values) / count
            self._count = count

    @property
    def n_paths(self):
        return self._count

    def _values(self):
        return np.concatenate(self._batches) if self._batches else np.zeros(0)

    def running_std_error(self):
        """
        Standard error of the paths collected so far, from the running accumulators.
        """

        if self._count < 2:
            return math.inf
        return math.sqrt(self._m2 / (self._count - 1) / self._count)

    def calculate(self, elapsed=0., steps_per_interval=None, seed=None, n_obs=None):
        """
        :return: McEstimate object. With a single path the standard error is reported as 0.
        """

        values = self._values()
        assert len(values) > 0, 'No paths collected'
        std_error = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.
        return McEstimate(float(values.mean()), std_error, len(values), elapsed, steps_per_interval, seed, n_obs)
