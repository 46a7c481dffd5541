import numpy as np


def cir_B(t, T, alpha_star, eta):
    """
    Rate exposure B(t, T) of the CIR zero-coupon bond price A(t, T) exp(-B(t, T) r(t)).

    Accepts scalars or numpy arrays for t and T (broadcast against each other).

    :param t: Calendar time(s) in years.
    :param T: Bond maturity (or maturities) in years.
    :param alpha_star: Risk-neutral mean-reversion speed of the rate.
    :param eta: Rate volatility.
    :return: B as a float (scalar inputs) or numpy array.
    """

    t_arr = np.asarray(t, dtype=np.float64)
    T_arr = np.asarray(T, dtype=np.float64)
    if np.any(t_arr < 0):
        raise ValueError('t must be non-negative')
    if np.any(t_arr > T_arr):
        raise ValueError('t must not exceed the bond maturity T')

    gamma = np.sqrt(alpha_star ** 2 + 2. * eta ** 2)
    growth = np.expm1(gamma * (T_arr - t_arr))
    with np.errstate(over='ignore', invalid='ignore'):
        b = np.where(
            np.isinf(growth),
            2. / (alpha_star + gamma),
            2. * growth / (2. * gamma + (alpha_star + gamma) * growth)
        )

    if b.ndim == 0:
        return float(b)
    return b
