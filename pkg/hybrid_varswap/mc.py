"""
Monte Carlo estimate of the fair strike under the T-forward measure.

(ln S, nu, r) are advanced with a full-truncation Euler scheme: the positive parts of nu and r enter every drift and
diffusion term while the accumulated states may turn negative.
"""
import math
import numbers
import os
import time

import numpy as np
import torch

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

from . import errors
from . import functional as hvF
from .callbacks import progress
from .evaluators import RealizedVarianceEvaluator
from .model import cholesky_factor, validate_contract, validate_params
from .ratecurve import cir_B
from .samplers import CounterBasedNormalSampler, PathBatchSampler, _batchify

realized_variance = hvF.realized_variance

MAX_SEED = 2 ** 64 - 1


def _is_int(value):
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


class McConfig(namedtuple('McConfig', ('n_paths', 'steps_per_interval', 'seed', 'workers', 'batch_size',
                                       'draws_per_step'))):
    """
    Monte Carlo settings. Results depend on (n_paths, steps_per_interval, seed, batch_size, draws_per_step) only;
    ``workers`` is a parallelism hint.

    Every Euler increment is built from ``draws_per_step`` consecutive normal draws of the path's stream, so a run with
    k steps and m draws per step follows the same Brownian path as a run with k * m steps and one draw per step.
    """

    __slots__ = ()

    def __new__(cls, n_paths, steps_per_interval=20, seed=0, workers=None, batch_size=16384, draws_per_step=1):
        return super(McConfig, cls).__new__(cls, n_paths, steps_per_interval, seed, workers, batch_size,
                                            draws_per_step)

    def validate(self):
        if not _is_int(self.n_paths) or self.n_paths < 1:
            raise errors.SettingsError('n_paths must be a positive integer, got %r' % (self.n_paths,))
        if not _is_int(self.steps_per_interval) or self.steps_per_interval < 1:
            raise errors.SettingsError(
                'steps_per_interval must be a positive integer, got %r' % (self.steps_per_interval,)
            )
        if not _is_int(self.seed) or not 0 <= self.seed <= MAX_SEED:
            raise errors.SettingsError('seed must be an unsigned 64 bit integer, got %r' % (self.seed,))
        if self.workers is not None and (not _is_int(self.workers) or self.workers < 1):
            raise errors.SettingsError('workers must be a positive integer, got %r' % (self.workers,))
        if not _is_int(self.batch_size) or self.batch_size < 1:
            raise errors.SettingsError('batch_size must be a positive integer, got %r' % (self.batch_size,))
        if not _is_int(self.draws_per_step) or self.draws_per_step < 1:
            raise errors.SettingsError('draws_per_step must be a positive integer, got %r' % (self.draws_per_step,))
        return self

    def to_dict(self):
        return dict(self._asdict())


class MonteCarloSimulator(object):
    """
    Simulates batches of paths of the hybrid model and returns their realized variances.
    """

    def __init__(self, params, contract, mc_config, device=torch.device('cpu')):
        """
        :param params: Validated ModelParams object.
        :param contract: Validated SwapContract object.
        :param mc_config: Validated McConfig object.
        :param device: Device on which paths are simulated.
        """

        super(MonteCarloSimulator, self).__init__()
        self._params = params
        self._contract = contract
        self._mc_config = mc_config
        self._device = device
        self._sampler = CounterBasedNormalSampler(mc_config.seed)

        self._n_steps = contract.n_obs * mc_config.steps_per_interval
        self._h = contract.dt / mc_config.steps_per_interval
        # B is frozen at the left point of every step
        step_times = np.arange(self._n_steps, dtype=np.float64) * self._h
        self._bond = cir_B(np.minimum(step_times, contract.maturity), contract.maturity, params.alpha_star,
                           params.eta).tolist()
        self._factor = torch.tensor(
            cholesky_factor(params.rho12, params.rho13, params.rho23).matrix, dtype=torch.float64
        )

    @property
    def device(self):
        return self._device

    @property
    def n_steps(self):
        return self._n_steps

    def to(self, device):
        """
        Transfers the simulation to the specified device.

        :param device: Device to be transferred to.
        :return: Returns the simulator (inplace).
        """

        self._device = device
        return self

    def _normals(self, keys, k):
        m = self._mc_config.draws_per_step
        if m == 1:
            return self._sampler.normals(keys, k)
        z = self._sampler.normals(keys, k * m)
        for i in range(1, m):
            z = z + self._sampler.normals(keys, k * m + i)
        return z / math.sqrt(m)

    def simulate_batch(self, start, stop):
        """
        Simulates paths start..stop-1.

        :return: 1D float64 Tensor (on the CPU) with the realized variance of every path in variance points.
        """

        p = self._params
        spi = self._mc_config.steps_per_interval
        h = self._h
        sqrt_h = math.sqrt(h)
        n = stop - start
        device = self._device

        keys = self._sampler.path_keys(start, stop)
        factor = self._factor.to(device)

        log_s = torch.full((n,), math.log(p.s0), dtype=torch.float64, device=device)
        nu = torch.full((n,), p.v0, dtype=torch.float64, device=device)
        r = torch.full((n,), p.r0, dtype=torch.float64, device=device)
        log_observations = [log_s]

        for k in range(self._n_steps):
            bond = self._bond[k]
            z = torch.from_numpy(self._normals(keys, k)).to(device)
            dw = (factor @ z) * sqrt_h

            nu_plus = hvF.positive_part(nu)
            r_plus = hvF.positive_part(r)
            sqrt_nu = torch.sqrt(nu_plus)
            sqrt_r = torch.sqrt(r_plus)
            cross = sqrt_nu * sqrt_r

            log_s = log_s + (r_plus - p.rho13 * bond * p.eta * cross - 0.5 * nu_plus) * h + sqrt_nu * dw[0]
            nu = nu + (p.kappa_star * (p.theta_star - nu_plus) - p.rho23 * p.sigma * bond * p.eta * cross) * h \
                + p.sigma * sqrt_nu * dw[1]
            r = r + (p.alpha_star * p.beta_star - (p.alpha_star + bond * p.eta ** 2) * r_plus) * h \
                + p.eta * sqrt_r * dw[2]

            if (k + 1) % spi == 0:
                if not bool(torch.isfinite(log_s).all() and torch.isfinite(nu).all() and torch.isfinite(r).all()):
                    raise errors.PathDivergenceError(k + 1, (k + 1) * h)
                log_observations.append(log_s)

        return hvF.realized_variance_from_log(torch.stack(log_observations, dim=-1), self._contract).cpu()


def simulate_strike(params, contract, mc_config, callbacks=None, verbose=False, device=torch.device('cpu')):
    """
    Estimates the fair strike by averaging realized variances of simulated paths.

    Batches are simulated concurrently in groups of ``workers`` but collected and reported to the callbacks in batch
    order, so the estimate is bit-identical for any worker count.

    :param params: ModelParams object.
    :param contract: SwapContract object.
    :param mc_config: McConfig object.
    :param callbacks: List of AbstractCallback objects.
    :param verbose: Whether to show a progress bar over the batches.
    :param device: Device on which paths are simulated.
    :return: McEstimate object.
    """

    validate_params(params)
    validate_contract(contract)
    mc_config.validate()
    callbacks = callbacks or []

    simulator = MonteCarloSimulator(params, contract, mc_config, device=device)
    batch_sampler = PathBatchSampler(mc_config.n_paths, mc_config.batch_size)
    workers = mc_config.workers or min(os.cpu_count() or 1, len(batch_sampler))
    evaluator = RealizedVarianceEvaluator()

    context = {
        'params': params,
        'contract': contract,
        'mc_config': mc_config,
        'evaluator': evaluator,
        'batches_done': 0,
        'paths_done': 0,
        'stop_simulation': False
    }
    for callback in callbacks:
        callback.on_simulation_start(context)

    start_time = time.perf_counter()
    groups = list(_batchify(list(batch_sampler), workers))
    gen = progress(verbose, desc='Batches')
    with ThreadPoolExecutor(max_workers=workers) as executor:
        for group in gen(groups):
            results = list(executor.map(lambda b: simulator.simulate_batch(b[1], b[2]), group))
            for (batch_index, batch_start, batch_stop), values in zip(group, results):
                evaluator.step(batch_index, values)
                context['batches_done'] += 1
                context['paths_done'] += batch_stop - batch_start
                for callback in callbacks:
                    callback.on_batch_end(context)
                if context['stop_simulation']:
                    break
            if context['stop_simulation']:
                break

    estimate = evaluator.calculate(
        elapsed=time.perf_counter() - start_time,
        steps_per_interval=mc_config.steps_per_interval,
        seed=mc_config.seed,
        n_obs=contract.n_obs
    )
    context['estimate'] = estimate
    for callback in callbacks:
        callback.on_simulation_end(context)

    return estimate
