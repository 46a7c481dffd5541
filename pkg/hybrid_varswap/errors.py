class HybridVarswapError(Exception):
    """
    Base class of every error raised by the package.
    """

    pass


class ConfigError(HybridVarswapError, ValueError):
    """
    Raised when a configuration file cannot be read or does not follow the expected schema.
    """

    pass


class ValidationError(HybridVarswapError, ValueError):
    """
    Raised when parameters, contracts or numerical settings violate their invariants. Each subclass carries a fixed
    machine-readable code.
    """

    code = 'invalid'

    def __init__(self, message, code=None):
        """
        :param message: Human readable description.
        :param code: Optional code overriding the class default.
        """

        super(ValidationError, self).__init__(message)
        if code is not None:
            self.code = code


class NegativeParameterError(ValidationError):
    code = 'negative_parameter'


class FellerVarianceError(ValidationError):
    code = 'feller_variance'


class FellerRateError(ValidationError):
    code = 'feller_rate'


class CorrelationRangeError(ValidationError):
    code = 'correlation_range'


class CorrelationNotPSDError(ValidationError):
    code = 'correlation_not_psd'


class CholeskyError(ValidationError):
    code = 'correlation_singular'


class ContractError(ValidationError):
    code = 'contract'


class SettingsError(ValidationError):
    code = 'settings'


class MomentFitError(ValidationError):
    code = 'moment_fit'


class NumericalError(HybridVarswapError, ArithmeticError):
    """
    Raised when a computation produces non-finite or singular intermediate values.
    """

    pass


class IntegrationError(NumericalError):

    def __init__(self, tau, message=None):
        """
        :param tau: Time to expiry at which the state stopped being finite.
        :param message: Optional message.
        """

        super(IntegrationError, self).__init__(
            message or 'ODE state became non-finite at tau=%.6g' % tau
        )
        self.tau = tau


class SingularityError(NumericalError):
    pass


class ExponentOverflowError(NumericalError):

    def __init__(self, exponent):
        """
        :param exponent: The offending exponent.
        """

        super(ExponentOverflowError, self).__init__('Exponent %r overflows float64' % (exponent,))
        self.exponent = exponent


class PathDivergenceError(NumericalError):

    def __init__(self, step, time):
        """
        :param step: Index of the Euler step at which a path state became non-finite.
        :param time: Calendar time of that step.
        """

        super(PathDivergenceError, self).__init__(
            'Simulated state became non-finite at step %d (t=%.6g)' % (step, time)
        )
        self.step = step
        self.time = time


class ApproximationBreakdownWarning(UserWarning):
    """
    Emitted when an interval expectation of a squared return comes out negative.
    """

    def __init__(self, interval, g_value):
        super(ApproximationBreakdownWarning, self).__init__(
            'Interval %d has negative expected squared return %.6e' % (interval, g_value)
        )
        self.interval = interval
        self.g_value = g_value
