__version__ = '0.1.0'

from . import errors, model, ratecurve, moments, charfn, pricer, functional, samplers, evaluators, callbacks, mc, \
    sweeps, report
from .model import ModelParams, SwapContract
from .pricer import Numerics, fair_strike
from .mc import McConfig, simulate_strike
