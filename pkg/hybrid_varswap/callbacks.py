import math
import tqdm
import warnings

from abc import ABC
from functools import partial
from tqdm.auto import tqdm as auto_tqdm

from . import errors

NCOLS = 80 if auto_tqdm is tqdm.std.tqdm else None


def progress(verbose, **kwargs):
    """
    :param verbose: Whether to show a progress bar.
    :return: Callable wrapping an iterable in a tqdm bar, or the identity.
    """

    return partial(auto_tqdm, ncols=NCOLS, **kwargs) if verbose else lambda x: x


class AbstractCallback(ABC):
    """
    Objects of derived classes inject functionality in several points of the pricing and simulation processes.
    """

    def on_pricing_start(self, context):
        """
        Called before the coefficients of the first interval are used.

        :param context: Dict containing information regarding the pricing process.
        """
        pass

    def on_interval_end(self, context):
        """
        Called after the expected squared return of an interval has been computed. The quote is found under the
        'interval_quote' key.

        :param context: Dict containing information regarding the pricing process.
        """
        pass

    def on_pricing_end(self, context):
        """
        Called after the strike has been assembled.

        :param context: Dict containing information regarding the pricing process.
        """
        pass

    def on_simulation_start(self, context):
        """
        Called before the first batch of paths is simulated.

        :param context: Dict containing information regarding the simulation.
        """
        pass

    def on_batch_end(self, context):
        """
        Called after the realized variances of a batch have been collected. Batches are reported in index order.
        Setting context['stop_simulation'] to True ends the simulation after this batch.

        :param context: Dict containing information regarding the simulation.
        """
        pass

    def on_simulation_end(self, context):
        """
        Called after the estimate has been calculated.

        :param context: Dict containing information regarding the simulation.
        """
        pass


class NegativeIntervalWarningCallback(AbstractCallback):
    """
    Emits an ApproximationBreakdownWarning for every interval whose expected squared return is negative. The value is
    kept in the strike as it is.
    """

    def on_interval_end(self, context):
        quote = context['interval_quote']
        if quote.g_value < 0:
            warnings.warn(errors.ApproximationBreakdownWarning(quote.j, quote.g_value))


class StandardErrorStoppingCallback(AbstractCallback):
    """
    Stops a simulation once the standard error of the running estimate drops below a target.
    """

    def __init__(self, target, min_batches=2):
        """
        :param target: Standard error in variance points at which the simulation stops.
        :param min_batches: Minimum number of batches before the criterion is checked.
        """

        if not target > 0 or not math.isfinite(target):
            raise errors.SettingsError('standard error target must be positive, got %r' % (target,))
        self._target = target
        self._min_batches = min_batches

    def on_batch_end(self, context):
        if context['batches_done'] < self._min_batches:
            return

        std_error = context['evaluator'].running_std_error()
        if std_error <= self._target:
            context['stop_simulation'] = True
            auto_tqdm.write('Standard error %.4g reached target %.4g after %d paths' % (
                std_error, self._target, context['paths_done']
            ))
