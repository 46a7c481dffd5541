"""
Approximate moments of the square-root processes nu(t) and r(t) and of their square roots.

All curves are written through the mean ``x_bar (1 - e^{-kt}) + x0 e^{-kt}`` and the scale ``q(t)`` so they stay finite
when the volatility of a process is zero and at t = 0.
"""
import math

import numpy as np

from . import errors

PROCESSES = ('variance', 'rate')
CONVENTIONS = ('simplified', 'full')


def _as_output(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return float(value)
    return value


def _check_time(t, strict):
    t = np.asarray(t, dtype=np.float64)
    if strict and np.any(t <= 0):
        raise ValueError('t must be strictly positive')
    if np.any(t < 0):
        raise ValueError('t must be non-negative')
    return t


class SqrtProcessMoments(object):
    """
    Moment approximations of a CIR process dX = k (x_bar - X) dt + s sqrt(X) dW started at x0.
    """

    def __init__(self, speed, level, vol, x0):
        """
        :param speed: Mean-reversion speed k.
        :param level: Long-run level x_bar.
        :param vol: Volatility s (may be zero).
        :param x0: Initial state.
        """

        super(SqrtProcessMoments, self).__init__()
        self._speed = float(speed)
        self._level = float(level)
        self._vol = float(vol)
        self._x0 = float(x0)

        radicand = self._level - self._vol ** 2 / (8. * self._speed)
        if radicand < 0:
            raise errors.MomentFitError(
                'Long-run level %g is below vol^2 / (8 k) = %g' % (self._level, self._vol ** 2 / (8. * self._speed))
            )
        self._m = math.sqrt(radicand)
        self._p = math.sqrt(self._x0) - self._m

        if self._p == 0:
            self._Q = 0.
        else:
            ratio = (float(self.lam(1.)) - self._m) / self._p
            if not ratio > 0:
                raise errors.MomentFitError('Exponential fit of E[sqrt(X)] is not defined (log argument %g)' % ratio)
            self._Q = -math.log(ratio)

    @property
    def speed(self):
        return self._speed

    @property
    def level(self):
        return self._level

    @property
    def vol(self):
        return self._vol

    @property
    def x0(self):
        return self._x0

    @property
    def l(self):
        if self._vol == 0:
            return math.inf
        return 4. * self._speed * self._level / self._vol ** 2

    @property
    def m(self):
        return self._m

    @property
    def p(self):
        return self._p

    @property
    def Q(self):
        return self._Q

    def _decay(self, t):
        return np.exp(-self._speed * _check_time(t, strict=False))

    def q(self, t):
        t = _check_time(t, strict=False)
        return _as_output(-self._vol ** 2 * np.expm1(-self._speed * t) / (4. * self._speed))

    def phi(self, t):
        t = _check_time(t, strict=False)
        denominator = -self._vol ** 2 * np.expm1(-self._speed * t)
        with np.errstate(divide='ignore', invalid='ignore'):
            value = 4. * self._speed * self._x0 * np.exp(-self._speed * t) / denominator
        return _as_output(np.where(denominator == 0, np.inf, value))

    def mean(self, t):
        """
        E[X(t)] = q(t) (l + phi(t)).
        """

        e = self._decay(t)
        return _as_output(self._level * (1. - e) + self._x0 * e)

    def variance(self, t):
        """
        Var[X(t)] = q(t)^2 (2 l + 4 phi(t)).
        """

        e = self._decay(t)
        return _as_output(np.asarray(self.q(t)) * (2. * self._level * (1. - e) + 4. * self._x0 * e))

    def sqrt_variance(self, t):
        """
        Var[sqrt(X(t))] ~ Var[X(t)] / (4 E[X(t)]) = q - q l / (2 (l + phi)).
        """

        e = self._decay(t)
        mean = self._level * (1. - e) + self._x0 * e
        return _as_output(np.asarray(self.q(t)) * (self._level * (1. - e) + 2. * self._x0 * e) / (2. * mean))

    def lam(self, t):
        """
        E[sqrt(X(t))] ~ sqrt(E[X(t)] - Var[sqrt(X(t))]).
        """

        radicand = np.asarray(self.mean(t)) - np.asarray(self.sqrt_variance(t))
        return _as_output(np.sqrt(np.maximum(radicand, 0.)))

    def lam_tilde(self, t):
        """
        Exponential fit m + p e^{-Q t}, anchored at sqrt(x0) for t = 0 and at lam(1) for t = 1.
        """

        t = _check_time(t, strict=False)
        return _as_output(self._m + self._p * np.exp(-self._Q * t))

    def normal_moments(self, t):
        return self.mean(t), self.variance(t)


def process_moments(params, process):
    """
    :param params: ModelParams object.
    :param process: 'variance' or 'rate'.
    :return: SqrtProcessMoments object of the requested process.
    """

    if process == 'variance':
        return SqrtProcessMoments(params.kappa_star, params.theta_star, params.sigma, params.v0)
    if process == 'rate':
        return SqrtProcessMoments(params.alpha_star, params.beta_star, params.eta, params.r0)
    raise ValueError('process must be one of %s, got %r' % (PROCESSES, process))


class MomentCurves(object):
    """
    Bundles the moment approximations of both processes and the product moment E[sqrt(nu) sqrt(r)].
    """

    def __init__(self, params, rho_prod=None, convention='simplified'):
        """
        :param params: ModelParams object.
        :param rho_prod: Correlation between sqrt(nu) and sqrt(r). If None rho23 is used.
        :param convention: 'simplified' uses the exponential fits for the means, 'full' the unfitted ones.
        """

        super(MomentCurves, self).__init__()
        if convention not in CONVENTIONS:
            raise errors.SettingsError('moment convention must be one of %s, got %r' % (CONVENTIONS, convention))
        self._variance = process_moments(params, 'variance')
        self._rate = process_moments(params, 'rate')
        self._rho_prod = params.rho23 if rho_prod is None else float(rho_prod)
        self._convention = convention

    @property
    def variance(self):
        return self._variance

    @property
    def rate(self):
        return self._rate

    @property
    def rho_prod(self):
        return self._rho_prod

    @property
    def convention(self):
        return self._convention

    def sqrt_mean(self, process, t):
        moments = self._variance if process == 'variance' else self._rate
        if self._convention == 'simplified':
            return moments.lam_tilde(t)
        return moments.lam(t)

    def product_moment(self, t):
        """
        E[sqrt(nu(t)) sqrt(r(t))]. Defined for t >= 0; at t = 0 it equals sqrt(v0) sqrt(r0).

        :param t: Calendar time(s) in years.
        """

        spread = np.sqrt(np.asarray(self._variance.sqrt_variance(t)) * np.asarray(self._rate.sqrt_variance(t)))
        value = self._rho_prod * spread \
            + np.asarray(self.sqrt_mean('variance', t)) * np.asarray(self.sqrt_mean('rate', t))
        return _as_output(value)


def lambda1(params, t):
    """
    Approximate E[sqrt(nu(t))].
    """

    _check_time(t, strict=True)
    return process_moments(params, 'variance').lam(t)


def lambda1_tilde(params, t):
    """
    Exponential fit of E[sqrt(nu(t))], valid for t >= 0.
    """

    return process_moments(params, 'variance').lam_tilde(t)


def lambda2(params, t):
    """
    Approximate E[sqrt(r(t))].
    """

    _check_time(t, strict=True)
    return process_moments(params, 'rate').lam(t)


def lambda2_tilde(params, t):
    return process_moments(params, 'rate').lam_tilde(t)


def sqrt_variance(params, process, t):
    """
    Approximate Var[sqrt(X(t))] for X the variance or the rate process.

    :param params: ModelParams object.
    :param process: 'variance' or 'rate'.
    :param t: Time(s) > 0.
    """

    _check_time(t, strict=True)
    return process_moments(params, process).sqrt_variance(t)


def product_moment(params, t, rho_prod=None, convention='simplified'):
    """
    Approximate E[sqrt(nu(t)) sqrt(r(t))] for t > 0.

    :param params: ModelParams object.
    :param t: Time(s) > 0.
    :param rho_prod: Correlation of the square roots. Defaults to rho23.
    :param convention: 'simplified' or 'full'.
    """

    _check_time(t, strict=True)
    return MomentCurves(params, rho_prod=rho_prod, convention=convention).product_moment(t)


def normal_moments(params, process, t):
    """
    Mean and variance of the normal approximation of X(t).

    :return: Tuple (mean, variance).
    """

    _check_time(t, strict=True)
    return process_moments(params, process).normal_moments(t)
