"""
Coefficients C, D, E of the exponential-affine solution exp(C + D nu + E r) of the transformed pricing PDE.

D has a closed form. E and C are integrated with a fixed-step fourth-order Runge-Kutta scheme; the time dependent
coefficients (bond exposure B, product moment E[sqrt(nu) sqrt(r)] and D itself) are evaluated once on a half-step grid
so that stage ``t_index + 1`` of a step corresponds to its midpoint.
"""
import numpy as np

from collections import namedtuple

from . import errors
from .moments import MomentCurves
from .ratecurve import cir_B

BOND_ANCHORS = ('swap_maturity', 'interval_expiry')

SINGULARITY_TOLERANCE = 1e-12
DEGENERACY_TOLERANCE = 1e-14


class AffineCoefficients(namedtuple('AffineCoefficients', (
        'omega', 'tau_grid', 'C_values', 'D_values', 'E_values', 'anchor', 'swap_maturity'))):
    """
    Coefficient curves of one sampling interval, on the grid tau in [0, dt] where tau is the time to the interval
    expiry ``anchor``.
    """

    __slots__ = ()

    @property
    def dt(self):
        return float(self.tau_grid[-1])

    def at_expiry(self):
        """
        :return: Tuple (C, D, E) at tau = dt.
        """

        return self.C_values[-1], self.D_values[-1], self.E_values[-1]


def d_closed_form(omega, tau, params):
    """
    Closed-form solution of dD/dtau = sigma^2 D^2 / 2 + (rho12 omega sigma i - kappa) D - (omega^2 + omega i) / 2 with
    D(0) = 0.

    :param omega: Complex transform variable.
    :param tau: Time(s) to expiry, scalar or numpy array, non-negative.
    :param params: ModelParams object.
    :return: Complex scalar or numpy array.
    """

    tau_arr = np.asarray(tau, dtype=np.float64)
    if np.any(tau_arr < 0):
        raise ValueError('tau must be non-negative')

    omega = complex(omega)
    sigma = params.sigma
    forcing = omega ** 2 + omega * 1j
    a = params.kappa_star - params.rho12 * sigma * omega * 1j
    b = np.sqrt(a ** 2 + sigma ** 2 * forcing + 0j)
    # a - b evaluated without cancellation
    a_minus_b = -sigma ** 2 * forcing / (a + b)

    if sigma == 0 or abs(a_minus_b) < DEGENERACY_TOLERANCE:
        g_inv = a_minus_b / (a + b)
        decay = np.exp(-b * tau_arr)
        d = -forcing / (a + b) * (1. - decay) / (1. - g_inv * decay)
    else:
        g = (a + b) / a_minus_b
        growth = np.exp(b * tau_arr)
        denominator = 1. - g * growth
        if np.any(np.abs(denominator) < SINGULARITY_TOLERANCE):
            raise errors.SingularityError('Denominator of D vanishes for omega=%r' % omega)
        d = (a + b) / sigma ** 2 * (1. - growth) / denominator

    if np.ndim(d) == 0:
        return complex(d)
    return d


def _integrate_rk4_with_memory(y, m, t_index, dt, f):
    """
    Advances y and m by one RK4 step. ``t_index + 1`` addresses the midpoint of the step and ``t_index + 2`` its end.
    """

    k1_y, k1_m = f(t_index, y, m)
    k2_y, k2_m = f(t_index + 1, y + 0.5 * dt * k1_y, m + 0.5 * dt * k1_m)
    k3_y, k3_m = f(t_index + 1, y + 0.5 * dt * k2_y, m + 0.5 * dt * k2_m)
    k4_y, k4_m = f(t_index + 2, y + dt * k3_y, m + dt * k3_m)
    return y + 1 / 6 * (k1_y + 2 * k2_y + 2 * k3_y + k4_y) * dt, m + 1 / 6 * (k1_m + 2 * k2_m + 2 * k3_m + k4_m) * dt


def _check_intervals(starts, expiries, swap_maturity):
    starts = np.atleast_1d(np.asarray(starts, dtype=np.float64))
    expiries = np.atleast_1d(np.asarray(expiries, dtype=np.float64))
    if starts.shape != expiries.shape or starts.ndim != 1:
        raise ValueError('interval starts and expiries must be matching 1D sequences')
    if np.any(starts < 0) or np.any(expiries <= starts):
        raise ValueError('intervals must satisfy 0 <= t_(j-1) < t_j')
    if np.any(expiries > swap_maturity):
        raise ValueError('interval expiries must not exceed the swap maturity')
    return starts, expiries


def solve_affine_system(omega, starts, expiries, swap_maturity, params, moment_curves=None, steps=256,
                        bond_anchor='swap_maturity'):
    """
    Integrates E and C jointly on every interval (t_(j-1), t_j] at once.

    Calendar time along the integration is t = t_j - tau. The bond exposure is B(t, T) with T the swap maturity, or
    B(t, t_j) when ``bond_anchor`` is 'interval_expiry'.

    :param omega: Complex transform variable.
    :param starts: Interval start date(s) t_(j-1).
    :param expiries: Interval expiry date(s) t_j.
    :param swap_maturity: Swap maturity T.
    :param params: ModelParams object.
    :param moment_curves: MomentCurves object providing the product moment. If None the default one is built.
    :param steps: Number of RK4 steps per interval.
    :param bond_anchor: 'swap_maturity' or 'interval_expiry'.
    :return: Tuple (tau_grid, C, D, E) of arrays with shape (steps + 1, n_intervals).
    """

    if isinstance(steps, bool) or not isinstance(steps, (int, np.integer)) or steps < 2:
        raise errors.SettingsError('ODE steps must be an integer >= 2, got %r' % (steps,))
    if bond_anchor not in BOND_ANCHORS:
        raise errors.SettingsError('bond anchor must be one of %s, got %r' % (BOND_ANCHORS, bond_anchor))
    starts, expiries = _check_intervals(starts, expiries, swap_maturity)
    if moment_curves is None:
        moment_curves = MomentCurves(params)

    omega = complex(omega)
    omega_i = omega * 1j
    lengths = expiries - starts
    h = lengths / steps

    # rows: half-step grid in tau, columns: intervals
    fine_taus = np.linspace(0., 1., 2 * steps + 1)[:, None] * lengths[None, :]
    anchor = swap_maturity if bond_anchor == 'swap_maturity' else expiries[None, :]
    calendar = np.clip(expiries[None, :] - fine_taus, 0., anchor)

    bond = cir_B(calendar, anchor, params.alpha_star, params.eta)
    prod = np.asarray(moment_curves.product_moment(calendar))
    d = np.asarray(d_closed_form(omega, fine_taus, params))

    eta2 = params.eta ** 2
    kappa_theta = params.kappa_star * params.theta_star
    alpha_beta = params.alpha_star * params.beta_star
    rate_cross = params.rho13 * params.eta * prod * omega_i
    variance_cross = params.rho23 * params.sigma * params.eta * prod * d

    def rhs(t_index, e, c):
        de = 0.5 * eta2 * e ** 2 - (params.alpha_star + bond[t_index] * eta2) * e + omega_i
        spread = e - bond[t_index]
        dc = kappa_theta * d[t_index] + alpha_beta * e \
            + rate_cross[t_index] * spread + variance_cross[t_index] * spread
        return de, dc

    n_intervals = len(expiries)
    e_values = np.zeros((steps + 1, n_intervals), dtype=np.complex128)
    c_values = np.zeros((steps + 1, n_intervals), dtype=np.complex128)

    e = e_values[0].copy()
    c = c_values[0].copy()
    for n in range(steps):
        e, c = _integrate_rk4_with_memory(e, c, 2 * n, h, rhs)
        finite = np.isfinite(e) & np.isfinite(c)
        if not finite.all():
            failed = int(np.argmin(finite))
            raise errors.IntegrationError(float((n + 1) * h[failed]))
        e_values[n + 1] = e
        c_values[n + 1] = c

    return fine_taus[::2], c_values, d[::2], e_values


def solve_E(omega, interval_expiry, swap_maturity, params, steps=256, interval_length=None,
            bond_anchor='swap_maturity'):
    """
    Integrates the E Riccati equation on [0, dt] for the interval ending at ``interval_expiry``.

    :param omega: Complex transform variable.
    :param interval_expiry: Interval expiry t_j.
    :param swap_maturity: Swap maturity T.
    :param params: ModelParams object.
    :param steps: Number of RK4 steps.
    :param interval_length: Interval length dt. If None the interval is [0, t_j].
    :param bond_anchor: 'swap_maturity' or 'interval_expiry'.
    :return: Tuple (tau_grid, E_values) of 1D arrays.
    """

    if interval_length is None:
        interval_length = interval_expiry
    taus, _, _, e = solve_affine_system(
        omega, interval_expiry - interval_length, interval_expiry, swap_maturity, params,
        steps=steps, bond_anchor=bond_anchor
    )
    return taus[:, 0], e[:, 0]


def solve_C(omega, interval, swap_maturity, params, moment_curves=None, steps=256, bond_anchor='swap_maturity'):
    """
    Integrates the C equation on the interval (t_(j-1), t_j].

    :param omega: Complex transform variable.
    :param interval: Tuple (t_(j-1), t_j).
    :param swap_maturity: Swap maturity T.
    :param params: ModelParams object.
    :param moment_curves: MomentCurves object. If None the default one is built.
    :param steps: Number of RK4 steps.
    :param bond_anchor: 'swap_maturity' or 'interval_expiry'.
    :return: Tuple (tau_grid, C_values) of 1D arrays.
    """

    start, expiry = interval
    taus, c, _, _ = solve_affine_system(
        omega, start, expiry, swap_maturity, params, moment_curves=moment_curves, steps=steps, bond_anchor=bond_anchor
    )
    return taus[:, 0], c[:, 0]


def interval_coefficients(omega, contract, params, moment_curves=None, steps=256, bond_anchor='swap_maturity'):
    """
    Coefficients of every sampling interval of a contract.

    :return: List of AffineCoefficients objects, one per interval j = 1..N.
    """

    times = contract.observation_times()
    taus, c, d, e = solve_affine_system(
        omega, times[:-1], times[1:], contract.maturity, params,
        moment_curves=moment_curves, steps=steps, bond_anchor=bond_anchor
    )
    return [
        AffineCoefficients(complex(omega), taus[:, j], c[:, j], d[:, j], e[:, j], float(times[j + 1]),
                           float(contract.maturity))
        for j in range(contract.n_obs)
    ]


def affine_coefficients(omega, interval, swap_maturity, params, moment_curves=None, steps=256,
                        bond_anchor='swap_maturity'):
    """
    Coefficients of a single interval.

    :param interval: Tuple (t_(j-1), t_j).
    :return: AffineCoefficients object.
    """

    start, expiry = interval
    taus, c, d, e = solve_affine_system(
        omega, start, expiry, swap_maturity, params, moment_curves=moment_curves, steps=steps, bond_anchor=bond_anchor
    )
    return AffineCoefficients(complex(omega), taus[:, 0], c[:, 0], d[:, 0], e[:, 0], float(expiry),
                              float(swap_maturity))
