#!/usr/bin/env python
# Copyright qgame authors
"""Command-line interface."""

import argparse
import logging
import sys
from typing import List, Optional

from qgame.config import DEBUG_ENV, OUTPUT_FORMATS, build_run_config, env_flag
from qgame.exceptions import InvalidArgument
from qgame.experiments import COMMANDS, EXIT_INVALID_ARGUMENT
from qgame.game import EntanglerKind, PayoffMode, PayoffSource

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'


def _common_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; None means "not given"."""
    parser = argparse.ArgumentParser(add_help=False)
    game = parser.add_argument_group('game')
    game.add_argument('--gamma-a', type=float, help='base noise of player A')
    game.add_argument('--gamma-b', type=float, help='base noise of player B')
    game.add_argument('--chi', type=float, help='entanglement degree in [0, pi/2]')
    game.add_argument('--entangler', choices=[k.value for k in EntanglerKind])
    game.add_argument('--payoff-mode', choices=[m.value for m in PayoffMode])
    game.add_argument('--epsilon', type=float, help='probability floor of the joint information')
    game.add_argument('--source', choices=[s.value for s in PayoffSource], help='payoff evaluation')

    grid = parser.add_argument_group('grid')
    grid.add_argument('--step', type=float, help='grid spacing dividing 1')
    grid.add_argument('--tol', type=float, help='Nash tolerance')

    bath = parser.add_argument_group('bath')
    bath.add_argument('--t', type=float, help='interaction time')
    bath.add_argument('--xi', type=float, help='coupling angle')
    bath.add_argument('--levels', type=int, help='Fock levels of the bath')
    bath.add_argument('--term-tol', type=float, help='series truncation threshold')
    bath.add_argument('--max-terms', type=int, help='series term limit')

    output = parser.add_argument_group('output')
    output.add_argument('--out', help='output file, or directory for reproduce-figures')
    output.add_argument('--format', choices=OUTPUT_FORMATS)
    output.add_argument('--config', help='JSON config file')
    output.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    return parser


def make_parser() -> argparse.ArgumentParser:
    """Return the parser of the `qgame` command."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='qgame',
        description='Two-player quantum games with phase damping channel strategies',
    )
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    helps = {
        'derive-kraus': 'derive the Kraus operators of the bath interaction',
        'weights': 'payoff weights at the base noise',
        'surface': 'payoff surface and best-response residuals',
        'nash': 'Nash equilibria, MAX point and dominant strategies',
        'reproduce-figures': 'run the four reference base-noise scenarios',
    }
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common], help=helps[name])
    return parser


def setup_logging(verbose: bool = False):
    level = logging.DEBUG if verbose or env_flag(DEBUG_ENV) else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command.

    Args:
        argv (list): arguments without the program name, defaults to sys.argv[1:]

    Returns:
        (int): exit status

    """
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits with 0, usage errors with 2
        return int(e.code or 0)

    if args.verbose:
        logging.getLogger('qgame').setLevel(logging.DEBUG)

    flags = {k: v for k, v in vars(args).items() if k not in ['command', 'config', 'verbose']}
    try:
        config = build_run_config(flags, args.config)
    except InvalidArgument as e:
        logger.error('invalid argument: %s', e)
        return EXIT_INVALID_ARGUMENT

    logger.debug('%s with %r', args.command, config.to_dict())
    return COMMANDS[args.command](config)


def run():
    """Console entry point."""
    setup_logging('-v' in sys.argv[1:] or '--verbose' in sys.argv[1:])
    sys.exit(main())


if __name__ == '__main__':
    run()
