import torch

VARIANCE_POINTS = 100. ** 2


def positive_part(tensor):
    """
    Replaces negative entries by zero.

    :param tensor: ND Tensor.
    :return: ND Tensor.
    """

    return torch.clamp(tensor, min=0.)


def _check_observation_count(tensor, contract):
    if tensor.shape[-1] != contract.n_obs + 1:
        raise ValueError('Expected %d observations per path, got %d' % (contract.n_obs + 1, tensor.shape[-1]))


def realized_variance(observations, contract):
    """
    Annualized realized variance of discretely observed prices in variance points,
    AF / N * sum_j (S(t_j) / S(t_(j-1)) - 1)^2 * 100^2 with AF = N / T.

    :param observations: Tensor (or sequence) of shape (..., N + 1) with the prices S(t_0), ..., S(t_N).
    :param contract: SwapContract object.
    :return: Tensor of shape (...).
    """

    observations = torch.as_tensor(observations, dtype=torch.float64)
    _check_observation_count(observations, contract)
    if not bool((observations > 0).all()):
        raise ValueError('Observations must be strictly positive')

    returns = observations[..., 1:] / observations[..., :-1] - 1.
    return (returns ** 2).sum(dim=-1) * (contract.af / contract.n_obs * VARIANCE_POINTS)


def realized_variance_from_log(log_observations, contract):
    """
    Same as realized_variance but takes log-prices, computing each relative return as expm1 of the log increment.

    :param log_observations: Tensor of shape (..., N + 1) with ln S(t_0), ..., ln S(t_N).
    :param contract: SwapContract object.
    :return: Tensor of shape (...).
    """

    log_observations = torch.as_tensor(log_observations, dtype=torch.float64)
    _check_observation_count(log_observations, contract)

    returns = torch.expm1(log_observations[..., 1:] - log_observations[..., :-1])
    return (returns ** 2).sum(dim=-1) * (contract.af / contract.n_obs * VARIANCE_POINTS)
