from hybrid_varswap.model import ModelParams, SwapContract


def baseline_params(**kwargs):
    """
    Risk-neutral parameters used throughout the test-suite, optionally with some fields replaced.
    """

    params = ModelParams(
        kappa_star=2.0, theta_star=0.05, sigma=0.1,
        alpha_star=1.2, beta_star=0.05, eta=0.01,
        rho12=-0.4, rho13=0.5, rho23=0.5,
        v0=0.05, r0=0.05, s0=1.0
    )
    return params.replace(**kwargs) if kwargs else params


def degenerate_params(**kwargs):
    """
    Baseline parameters without vol-of-vol and rate volatility, started at the long-run levels.
    """

    return baseline_params(sigma=0.0, eta=0.0, v0=0.05, r0=0.05, **kwargs)


def baseline_contract(n_obs=4, maturity=1.0):
    return SwapContract(maturity, n_obs)
