"""
Semi-closed-form fair strike of a discretely sampled variance swap.

For every interval (t_(j-1), t_j] the expected squared relative return is written through the affine coefficients at
omega = -2i (tilde) and omega = -i (hat). The first interval starts from the known state; later intervals average over
normal approximations of nu(t_(j-1)) and r(t_(j-1)).
"""
import math

from collections import namedtuple

from . import errors
from .callbacks import NegativeIntervalWarningCallback, progress
from .charfn import BOND_ANCHORS, interval_coefficients
from .model import validate_contract, validate_params
from .moments import CONVENTIONS, MomentCurves

VARIANCE_POINTS = 100. ** 2
MAX_EXPONENT = 709.

OMEGA_TILDE = -2j
OMEGA_HAT = -1j


class Numerics(namedtuple('Numerics', ('ode_steps', 'moment_convention', 'rho_prod', 'bond_anchor'))):
    """
    Numerical settings of the formula pricer.
    """

    __slots__ = ()

    def __new__(cls, ode_steps=256, moment_convention='simplified', rho_prod=None, bond_anchor='swap_maturity'):
        return super(Numerics, cls).__new__(cls, ode_steps, moment_convention, rho_prod, bond_anchor)

    def validate(self):
        if isinstance(self.ode_steps, bool) or not isinstance(self.ode_steps, int) or self.ode_steps < 2:
            raise errors.SettingsError('ode_steps must be an integer >= 2, got %r' % (self.ode_steps,))
        if self.moment_convention not in CONVENTIONS:
            raise errors.SettingsError('moment_convention must be one of %s' % (CONVENTIONS,))
        if self.bond_anchor not in BOND_ANCHORS:
            raise errors.SettingsError('bond_anchor must be one of %s' % (BOND_ANCHORS,))
        if self.rho_prod is not None and not -1. <= self.rho_prod <= 1.:
            raise errors.SettingsError('rho_prod must lie in [-1, 1], got %r' % (self.rho_prod,))
        return self

    def to_dict(self):
        return dict(self._asdict())


class CoefficientSnapshot(namedtuple('CoefficientSnapshot', ('C_tilde', 'D_tilde', 'E_tilde', 'C_hat', 'E_hat'))):
    """
    Real parts of the coefficients at tau = dt for omega = -2i (tilde) and omega = -i (hat).
    """

    __slots__ = ()

    @classmethod
    def from_coefficients(cls, tilde, hat):
        c_tilde, d_tilde, e_tilde = tilde.at_expiry()
        c_hat, _, e_hat = hat.at_expiry()
        return cls(float(c_tilde.real), float(d_tilde.real), float(e_tilde.real), float(c_hat.real),
                   float(e_hat.real))


IntervalQuote = namedtuple('IntervalQuote', ('j', 'g_value', 'coefficients'))


class StrikeQuote(namedtuple('StrikeQuote', ('strike_variance_points', 'intervals', 'diagnostics'))):
    """
    Fair strike in variance points with the per-interval breakdown.
    """

    __slots__ = ()

    @property
    def strike(self):
        return self.strike_variance_points

    def recompute(self, maturity):
        """
        :param maturity: Swap maturity T.
        :return: 100^2 / T times the sum of the interval values, summed in interval order.
        """

        total = 0.
        for quote in self.intervals:
            total += quote.g_value
        return VARIANCE_POINTS / maturity * total


def _expm1_checked(exponent):
    if not exponent <= MAX_EXPONENT:
        raise errors.ExponentOverflowError(exponent)
    return math.expm1(exponent)


def inner_g(nu, r, coeffs):
    """
    Expected squared relative return over an interval started at a known state,
    e^{C~ + D~ nu + E~ r} - 2 e^{C^ + E^ r} + 1.

    :param nu: Variance at the interval start.
    :param r: Short rate at the interval start.
    :param coeffs: CoefficientSnapshot object.
    :return: Float.
    """

    tilde = coeffs.C_tilde + coeffs.D_tilde * nu + coeffs.E_tilde * r
    hat = coeffs.C_hat + coeffs.E_hat * r
    return _expm1_checked(tilde) - 2. * _expm1_checked(hat)


def outer_g(coeffs, nu_moments, r_moments, rho23):
    """
    Expected squared relative return over an interval whose start state is approximately normal. Uses
    E[e^Y] = exp(E[Y] + Var[Y] / 2) for Y = D~ nu + E~ r.

    :param coeffs: CoefficientSnapshot object.
    :param nu_moments: Tuple (mean, variance) of nu at the interval start.
    :param r_moments: Tuple (mean, variance) of r at the interval start.
    :param rho23: Correlation of the variance and rate drivers.
    :return: Float.
    """

    mean_nu, var_nu = nu_moments
    mean_r, var_r = r_moments
    mean_y = coeffs.D_tilde * mean_nu + coeffs.E_tilde * mean_r
    var_y = coeffs.D_tilde ** 2 * var_nu + coeffs.E_tilde ** 2 * var_r \
        + 2. * coeffs.D_tilde * coeffs.E_tilde * rho23 * math.sqrt(var_nu * var_r)

    tilde = coeffs.C_tilde + mean_y + 0.5 * var_y
    hat = coeffs.C_hat + coeffs.E_hat * mean_r + 0.5 * coeffs.E_hat ** 2 * var_r
    return _expm1_checked(tilde) - 2. * _expm1_checked(hat)


def fair_strike(params, contract, numerics=None, callbacks=None, verbose=False):
    """
    Prices the variance swap with the semi-closed-form approximation.

    :param params: ModelParams object.
    :param contract: SwapContract object.
    :param numerics: Numerics object. If None the defaults are used.
    :param callbacks: List of AbstractCallback objects. If None a NegativeIntervalWarningCallback is used.
    :param verbose: Whether to show a progress bar over the intervals.
    :return: StrikeQuote object.
    """

    validate_params(params)
    validate_contract(contract)
    numerics = (numerics or Numerics()).validate()
    if callbacks is None:
        callbacks = [NegativeIntervalWarningCallback()]

    curves = MomentCurves(params, rho_prod=numerics.rho_prod, convention=numerics.moment_convention)
    tilde = interval_coefficients(OMEGA_TILDE, contract, params, moment_curves=curves, steps=numerics.ode_steps,
                                  bond_anchor=numerics.bond_anchor)
    hat = interval_coefficients(OMEGA_HAT, contract, params, moment_curves=curves, steps=numerics.ode_steps,
                                bond_anchor=numerics.bond_anchor)

    max_imag = max(
        max(abs(c.C_values.imag).max(), abs(c.D_values.imag).max(), abs(c.E_values.imag).max())
        for c in tilde + hat
    )

    context = {
        'params': params,
        'contract': contract,
        'numerics': numerics,
        'interval_quotes': []
    }
    for callback in callbacks:
        callback.on_pricing_start(context)

    times = contract.observation_times()
    gen = progress(verbose, desc='Intervals')
    total = 0.
    for j in gen(range(1, contract.n_obs + 1)):
        snapshot = CoefficientSnapshot.from_coefficients(tilde[j - 1], hat[j - 1])
        if j == 1:
            g_value = inner_g(params.v0, params.r0, snapshot)
        else:
            start = float(times[j - 1])
            g_value = outer_g(
                snapshot,
                curves.variance.normal_moments(start),
                curves.rate.normal_moments(start),
                params.rho23
            )

        quote = IntervalQuote(j, g_value, snapshot)
        total += g_value
        context['interval_quote'] = quote
        context['interval_quotes'].append(quote)
        for callback in callbacks:
            callback.on_interval_end(context)

    diagnostics = numerics.to_dict()
    diagnostics['rho_prod'] = curves.rho_prod
    diagnostics['max_imag'] = float(max_imag)

    strike_quote = StrikeQuote(VARIANCE_POINTS / contract.maturity * total, tuple(context['interval_quotes']),
                               diagnostics)
    context['strike_quote'] = strike_quote
    for callback in callbacks:
        callback.on_pricing_end(context)

    return strike_quote
