"""Main application entry point."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

from nonlocal_grayscott import __version__
from nonlocal_grayscott.config.config import Configuration
from nonlocal_grayscott.config.presets import get_preset, presets
from nonlocal_grayscott.config.run_config import RunConfig, load_run_config
from nonlocal_grayscott.config.settings import (
    EXIT_DIVERGED,
    EXIT_FAILURE,
    EXIT_INVALID_CONFIG,
    EXIT_OK,
)
from nonlocal_grayscott.errors import (
    ConfigurationError,
    DivergenceError,
    NonlocalGrayScottError,
)
from nonlocal_grayscott.experiments.checks import run_seed_checks
from nonlocal_grayscott.experiments.runner import run_experiment
from nonlocal_grayscott.utils.logging import setup_logging


def build_parser() -> argparse.ArgumentParser:
    """Create the command-line parser."""
    parser = argparse.ArgumentParser(
        prog="nonlocal-grayscott",
        description="Quadrature and spectral solvers for the nonlocal Gray-Scott model",
    )
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="Path to a JSON run configuration")
    source.add_argument("--preset", help="Name of a shipped preset")
    parser.add_argument(
        "--desk", action="store_true", help="Use the reduced desk-scale preset variant"
    )
    parser.add_argument("--out", help="Output directory (overrides the configuration)")
    parser.add_argument(
        "--seed-check", action="store_true", help="Run the invariant suite and exit"
    )
    parser.add_argument(
        "--list-presets", action="store_true", help="Print the preset names and exit"
    )
    parser.add_argument("--log-level", help="Logging level (default from NLGS_LOG_LEVEL)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Load the run configuration named on the command line.

    Raises:
        ConfigurationError: If neither --config nor --preset is given or either is invalid
    """
    if args.config:
        return load_run_config(args.config)
    if args.preset:
        scale = "desk" if args.desk else "full"
        logging.info(f"Using preset {args.preset} ({scale} scale)")
        return get_preset(args.preset, desk=args.desk)
    raise ConfigurationError("one of --config or --preset is required")


def output_directory(
    args: argparse.Namespace, config: RunConfig, env: Configuration
) -> Path:
    """--out, then the configured directory, then NLGS_OUTPUT_DIR (per preset)."""
    explicit = args.out or config.outputs.directory
    base = Path(env.resolve_output_dir(explicit))
    return base / args.preset if args.preset and not explicit else base


async def run_cli(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the requested experiment and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    env = Configuration()
    try:
        setup_logging(args.log_level or env.log_level)
    except ValueError as e:
        print(f"Invalid log level: {e}", file=sys.stderr)
        return EXIT_INVALID_CONFIG

    if args.list_presets:
        for name in presets():
            print(name)
        return EXIT_OK

    if args.seed_check:
        results = run_seed_checks()
        failed = [r.name for r in results if not r.passed]
        if failed:
            logging.error(f"{len(failed)} invariant checks failed: {failed}")
            return EXIT_FAILURE
        logging.info(f"All {len(results)} invariant checks passed")
        return EXIT_OK

    try:
        config = resolve_config(args)
        directory = output_directory(args, config, env)
        outcome = await run_experiment(config, directory)
    except ConfigurationError as e:
        logging.error(f"Invalid configuration: {e}")
        return EXIT_INVALID_CONFIG
    except DivergenceError as e:
        logging.error(f"Divergence: {e}")
        return EXIT_DIVERGED
    except NonlocalGrayScottError as e:
        logging.error(f"Error: {e}")
        return EXIT_FAILURE
    except KeyboardInterrupt:
        logging.info("Interrupted")
        return EXIT_FAILURE

    logging.info(
        f"{outcome.kind} finished: {len(outcome.files)} files in {outcome.directory}"
    )
    return EXIT_OK


def main() -> None:
    """Run the application."""
    sys.exit(asyncio.run(run_cli()))
