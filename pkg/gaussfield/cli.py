#  This file is part of GaussField.
#
#  SPDX-FileCopyrightText: 2019–2021 GaussField Contributors
#
#  SPDX-License-Identifier: LGPL-3.0-or-later
#
"""GaussField builds Gaussian random fields on Hölder spaces and spaces of measures.

This module provides the main entry location for the program execution from the command
line.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import simple_parsing
from rich.logging import RichHandler
from rich.traceback import install
from simple_parsing import DashVariant

import gaussfield.configuration as config
from gaussfield import __version__
from gaussfield.runner import ReturnCode, run_command, set_configuration
from gaussfield.utils.console import console
from gaussfield.utils.exceptions import ConfigurationException
from gaussfield.utils.randomness import THREADS_VARIABLE

_DESCRIPTION = (
    "GaussField diagonalises covariance kernels in Faber-Schauder tensor bases, "
    "draws Gaussian random fields and validates their covariance and regularity"
)

_COMMON_EPILOG = (
    "Settings can be read from a flat 'key = value' file given with --config, "
    "where '#' starts a comment and lists are comma separated; flags override "
    "file values.  Arguments can also be read from a file given as @file.  "
    f"The {THREADS_VARIABLE} environment variable sets the default number of "
    "sampling threads.  --report writes one record per check with the columns "
    "metric,parameters,value,tolerance,passed (CSV, or JSON for a .json name).  "
    "Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input error."
)

_EPILOGS = {
    config.Command.DECOMPOSE: (
        "--out receives a JSON document with 'metadata' (format, version, kernel, "
        "dim, k_max, alpha, norm mode, pivot tolerance, space, base measure), the "
        "arrays 'lambdas', 'phis', 'etas', 'pivots', 'pivot_indices', the "
        "verification 'report' and the coefficient 'tensor' in symmetric square "
        "order.  Kernels: exp-alpha:<a>, gaussian-se:<scale>, white-noise:lebesgue, "
        "white-noise:counting:<x1>;<x2>... and gaussian-measure."
    ),
    config.Command.SAMPLE: (
        "--decomp names a decomposition file.  --out receives a CSV file with the "
        "header sample,x1,...,xn,value holding 2^grid + 1 nodes per axis for each "
        "sample; measure-valued decompositions write '# base=' and '# kernel=' "
        "comment lines and a density (or weight, for counting measures) column."
    ),
    config.Command.VALIDATE_COV: (
        "Compares empirical covariances at the points {0, 1/4, 1/2}^2 with the "
        "decomposition's targets and checks skewness and kurtosis of five pairings.  "
        "--out receives the CSV table x,y,estimate,standard_error,target."
    ),
    config.Command.HOLDER: (
        "Estimates the Hölder exponent of samples on the output grid and checks the "
        "seminorm trend of the kernel section through the cube's centre for every "
        "--gamma."
    ),
    config.Command.BESOV: (
        "Checks the ratios of per-level sums of renormalised kernel coefficients "
        "for every --gamma from level 3 up to --k-max."
    ),
    config.Command.WHITENOISE: (
        "Decomposes white noise over the kernel's base measure (Lebesgue for a "
        "pointwise kernel) and checks the pairing covariances of 1 and x.  --out "
        "receives the decomposition file."
    ),
    config.Command.MERCER_ORACLE: (
        "Diagonalises the kernel with --grid-size Nyström nodes, checks the trace "
        "and compares Karhunen-Loève covariances with the decomposition's targets."
    ),
    config.Command.SANDWICH: (
        "Checks the two-sided bound on the exp-alpha difference quotient over "
        "--n-triples random triples for --alpha."
    ),
}


def _create_common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        dest="verbosity",
        default=0,
        help="verbose output (repeat for increased verbosity)",
    )
    parser.add_argument(
        "--log-file",
        "--log_file",
        dest="log_file",
        type=str,
        default=None,
        help="Path to store the log file.",
    )
    parser.add_argument(
        "-q",
        "--quiet",
        action="store_const",
        const=-1,
        default=0,
        dest="verbosity",
        help="quiet output",
    )
    parser.add_argument(
        "--config",
        dest="config_file",
        type=str,
        default=None,
        help="Path of a key = value configuration file.",
    )
    return parser


def _create_argument_parser(
    defaults: Optional[config.RunConfig] = None,
) -> argparse.ArgumentParser:
    parser = simple_parsing.ArgumentParser(
        add_option_string_dash_variants=DashVariant.UNDERSCORE_AND_DASH,
        description=_DESCRIPTION,
        fromfile_prefix_chars="@",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    subparsers = parser.add_subparsers(
        title="commands", dest="command", metavar="COMMAND"
    )
    subparsers.required = True
    common = _create_common_parser()
    for command in config.Command:
        subparser = subparsers.add_parser(
            command.value,
            help=_help_line(command),
            description=_help_line(command),
            epilog=_EPILOGS[command] + "  " + _COMMON_EPILOG,
            parents=[common],
            add_option_string_dash_variants=DashVariant.UNDERSCORE_AND_DASH,
            fromfile_prefix_chars="@",
        )
        subparser.add_arguments(
            config.RunConfig, dest="config", default=defaults or config.RunConfig()
        )

    return parser


def _help_line(command: config.Command) -> str:
    return (command.__doc__ or "").strip() or command.value


def _read_file_defaults(arguments: List[str]) -> config.RunConfig:
    """Read the configuration file named by --config, if there is one.

    Args:
        arguments: The command-line arguments without the program name

    Returns:
        The configuration the command-line flags start from
    """
    parser = argparse.ArgumentParser(add_help=False, fromfile_prefix_chars="@")
    parser.add_argument("--config", dest="config_file", default=None)
    known, _ = parser.parse_known_args(arguments)
    if known.config_file is None:
        return config.RunConfig()
    return config.load_config_file(known.config_file)


def _setup_logging(
    verbosity: int,
    log_file: Optional[str] = None,
):
    default_log_format = (
        "%(asctime)s [%(levelname)s](%(name)s:%(funcName)s:%(lineno)d): %(message)s"
    )
    logger = logging.getLogger("")  # get root logger
    logger.setLevel(logging.DEBUG)
    default_formatter = logging.Formatter(fmt=default_log_format, datefmt="%X")
    if log_file:
        log_file_path = Path(log_file).resolve()
        if not log_file_path.parent.exists():
            log_file_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(default_formatter)
        logger.addHandler(file_handler)

    if verbosity < 0:
        logger.addHandler(logging.NullHandler())
    else:
        level = logging.WARNING
        if verbosity == 1:
            level = logging.INFO
        if verbosity >= 2:
            level = logging.DEBUG

        console_handler = RichHandler(
            rich_tracebacks=True, log_time_format="[%X]", console=console
        )
        console_handler.setLevel(level)
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(console_handler)


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the CLI of GaussField.

    This method behaves like a standard UNIX command-line application, i.e.,
    the return value `0` signals that the command ran and all of its checks
    passed, `1` that a validation check failed and `2` that the arguments, the
    configuration or an input file were invalid.

    Args:
        argv: List of command-line arguments, starting with the program name

    Returns:
        An integer representing the success of the program run.
    """
    install()
    if argv is None:
        argv = sys.argv
    arguments = list(argv[1:]) or ["--help"]

    try:
        defaults = _read_file_defaults(arguments)
        parsed = _create_argument_parser(defaults).parse_args(arguments)
    except ConfigurationException as error:
        console.print(f"[red]error:[/red] {error}")
        return ReturnCode.USAGE_ERROR.value
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else ReturnCode.OK.value
    _setup_logging(parsed.verbosity, parsed.log_file)

    set_configuration(parsed.config)
    command = config.Command(parsed.command)
    with console.status(f"Running {command.value}..."):
        return run_command(command).value


if __name__ == "__main__":
    sys.exit(main(sys.argv))
