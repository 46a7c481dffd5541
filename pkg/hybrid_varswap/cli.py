"""
Batch front-end.

    hybrid-varswap price   --config baseline.json --n 4,12,26,52,252
    hybrid-varswap mc      --config baseline.json --n 52 --paths 200000 --seed 42
    hybrid-varswap sweep   --config baseline.json --param rho23 --values -0.5,0,0.5 --n 12
    hybrid-varswap compare --config baseline.json --n 4,12,26,52,252 --out compare.csv

Exit codes: 0 success, 2 usage or unreadable config, 3 validation failure, 4 numerical failure.
"""
import argparse
import sys
import time

from tqdm.auto import tqdm

from . import errors
from .mc import McConfig, simulate_strike
from .model import load_config, validate_contract, validate_params
from .pricer import Numerics, fair_strike
from .report import RunReport
from .sweeps import ParameterSweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4

SWEEPABLE = ('rho13', 'rho23')


def _int_list(text):
    try:
        values = [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected a comma separated list of integers, got %r' % text)
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError('expected positive observation counts, got %r' % text)
    return values


def _float_list(text):
    try:
        values = [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected a comma separated list of numbers, got %r' % text)
    if not values:
        raise argparse.ArgumentTypeError('expected at least one value')
    return values


def _load(config_path):
    params, contract = load_config(config_path)
    return validate_params(params), validate_contract(contract)


def _base_parameters(config_path, params, contract, n_obs_list):
    return {
        'config': config_path,
        'model': params.to_dict(),
        'maturity': contract.maturity,
        'n_obs': list(n_obs_list)
    }


def cmd_price(config_path, n_obs_list=None, numerics=None, verbose=False):
    """
    Formula strikes for every requested observation count.

    :return: RunReport object with columns n_obs, strike_formula.
    """

    params, contract = _load(config_path)
    numerics = (numerics or Numerics()).validate()
    n_obs_list = n_obs_list or [contract.n_obs]

    start = time.perf_counter()
    rows = []
    for n_obs in n_obs_list:
        quote = fair_strike(params, contract._replace(n_obs=n_obs), numerics, verbose=verbose)
        rows.append({'n_obs': n_obs, 'strike_formula': quote.strike_variance_points})

    parameters = _base_parameters(config_path, params, contract, n_obs_list)
    parameters['numerics'] = numerics.to_dict()
    return RunReport('price', parameters, rows, {'formula': time.perf_counter() - start})


def cmd_mc(config_path, paths, steps=20, seed=0, n_obs_list=None, workers=None, batch_size=16384, verbose=False):
    """
    Monte Carlo estimates for every requested observation count.

    :return: RunReport object with columns n_obs, strike_mc, std_error, paths, seed.
    """

    params, contract = _load(config_path)
    mc_config = McConfig(paths, steps, seed, workers, batch_size).validate()
    n_obs_list = n_obs_list or [contract.n_obs]

    start = time.perf_counter()
    rows = []
    for n_obs in n_obs_list:
        estimate = simulate_strike(params, contract._replace(n_obs=n_obs), mc_config, verbose=verbose)
        rows.append({
            'n_obs': n_obs,
            'strike_mc': estimate.strike_estimate,
            'std_error': estimate.std_error,
            'paths': estimate.n_paths,
            'seed': estimate.seed
        })

    parameters = _base_parameters(config_path, params, contract, n_obs_list)
    parameters['mc'] = mc_config.to_dict()
    return RunReport('mc', parameters, rows, {'mc': time.perf_counter() - start})


def cmd_sweep(config_path, param, values, n_obs_list=None, numerics=None, verbose=False):
    """
    Formula strikes over a grid of one correlation and the observation count. Cells whose parameters fail validation
    are reported with their error code.

    :return: RunReport object with columns param, value, n_obs, strike, error.
    """

    if param not in SWEEPABLE:
        raise errors.SettingsError('param must be one of %s, got %r' % (SWEEPABLE, param))
    params, contract = _load(config_path)
    numerics = (numerics or Numerics()).validate()
    n_obs_list = n_obs_list or [contract.n_obs]

    start = time.perf_counter()
    points = ParameterSweep(params, contract, param, values, n_obs_list, numerics).run(verbose=verbose)
    rows = [dict(p._asdict()) for p in points]

    parameters = _base_parameters(config_path, params, contract, n_obs_list)
    parameters['numerics'] = numerics.to_dict()
    parameters['sweep'] = {'param': param, 'values': list(values)}
    return RunReport('sweep', parameters, rows, {'formula': time.perf_counter() - start})


def cmd_compare(config_path, n_obs_list=None, paths=200000, steps=20, seed=0, workers=None, batch_size=16384,
                skip_mc=False, numerics=None, verbose=False):
    """
    Formula strikes joined with Monte Carlo estimates and their relative difference.

    :return: RunReport object with columns n_obs, strike_formula, strike_mc, std_error, rel_error, paths, seed.
    """

    params, contract = _load(config_path)
    numerics = (numerics or Numerics()).validate()
    mc_config = None if skip_mc else McConfig(paths, steps, seed, workers, batch_size).validate()
    n_obs_list = n_obs_list or [contract.n_obs]

    timing = {'formula': 0., 'mc': 0.}
    rows = []
    for n_obs in n_obs_list:
        n_contract = contract._replace(n_obs=n_obs)
        start = time.perf_counter()
        strike = fair_strike(params, n_contract, numerics, verbose=verbose).strike_variance_points
        timing['formula'] += time.perf_counter() - start

        row = {'n_obs': n_obs, 'strike_formula': strike, 'strike_mc': None, 'std_error': None, 'rel_error': None,
               'paths': None, 'seed': None}
        if mc_config is not None:
            start = time.perf_counter()
            estimate = simulate_strike(params, n_contract, mc_config, verbose=verbose)
            timing['mc'] += time.perf_counter() - start
            row.update({
                'strike_mc': estimate.strike_estimate,
                'std_error': estimate.std_error,
                'rel_error': abs(estimate.strike_estimate - strike) / strike,
                'paths': estimate.n_paths,
                'seed': estimate.seed
            })
        rows.append(row)

    parameters = _base_parameters(config_path, params, contract, n_obs_list)
    parameters['numerics'] = numerics.to_dict()
    parameters['mc'] = None if mc_config is None else mc_config.to_dict()
    return RunReport('compare', parameters, rows, timing)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', required=True, help='JSON file with model parameters, maturity and n_obs.')
    common.add_argument('--n', type=_int_list, default=None, help='Comma separated observation counts.')
    common.add_argument('--out', default=None, help='Path of the CSV output.')
    common.add_argument('--json', default=None, help='Path of the JSON report.')
    common.add_argument('--ode-steps', type=int, default=256, help='RK4 steps per sampling interval.')
    common.add_argument('--verbose', action='store_true', help='Show progress bars.')

    simulation = argparse.ArgumentParser(add_help=False)
    simulation.add_argument('--paths', type=int, default=200000, help='Number of simulated paths.')
    simulation.add_argument('--steps', type=int, default=20, help='Euler steps per sampling interval.')
    simulation.add_argument('--seed', type=int, default=0, help='Unsigned 64 bit seed.')
    simulation.add_argument('--workers', type=int, default=None, help='Concurrent batches (does not affect results).')
    simulation.add_argument('--batch-size', type=int, default=16384, help='Paths per batch.')

    parser = argparse.ArgumentParser(
        prog='hybrid-varswap',
        description='Fair strikes of discretely sampled variance swaps under the Heston-CIR hybrid model.'
    )
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    subparsers.add_parser('price', parents=[common], help='Semi-closed-form strikes.')
    subparsers.add_parser('mc', parents=[common, simulation], help='Monte Carlo strikes.')
    sweep = subparsers.add_parser('sweep', parents=[common], help='Formula strikes over a correlation grid.')
    sweep.add_argument('--param', choices=SWEEPABLE, required=True)
    sweep.add_argument('--values', type=_float_list, required=True, help='Comma separated parameter values.')
    compare = subparsers.add_parser('compare', parents=[common, simulation], help='Formula against Monte Carlo.')
    compare.add_argument('--skip-mc', action='store_true', help='Only compute the formula columns.')

    return parser


def _dispatch(args):
    numerics = Numerics(ode_steps=args.ode_steps)
    if args.command == 'price':
        return cmd_price(args.config, args.n, numerics, verbose=args.verbose)
    if args.command == 'mc':
        return cmd_mc(args.config, args.paths, args.steps, args.seed, args.n, args.workers, args.batch_size,
                      verbose=args.verbose)
    if args.command == 'sweep':
        return cmd_sweep(args.config, args.param, args.values, args.n, numerics, verbose=args.verbose)
    return cmd_compare(args.config, args.n, args.paths, args.steps, args.seed, args.workers, args.batch_size,
                       args.skip_mc, numerics, verbose=args.verbose)


def main(argv=None):
    """
    Entry point of the command line interface.

    :param argv: Argument list. If None sys.argv is used.
    :return: Exit code.
    """

    args = build_parser().parse_args(argv)

    try:
        report = _dispatch(args)
    except errors.ConfigError as e:
        tqdm.write('config error: %s' % e, file=sys.stderr)
        return EXIT_USAGE
    except errors.ValidationError as e:
        tqdm.write('validation error [%s]: %s' % (e.code, e), file=sys.stderr)
        return EXIT_VALIDATION
    except errors.NumericalError as e:
        tqdm.write('numerical error: %s' % e, file=sys.stderr)
        return EXIT_NUMERICAL

    tqdm.write(report.to_table())
    if args.out is not None:
        report.write_csv(args.out)
    if args.json is not None:
        report.save(args.json)

    return EXIT_OK
