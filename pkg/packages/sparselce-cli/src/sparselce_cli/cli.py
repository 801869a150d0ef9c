# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""The ``sparselce`` command line.

Subcommands:
    build   Build an index and write it to disk.
    query   Answer LCE queries against a saved index.
    verify  Cross-check a configuration against the brute-force oracles.
    bench   Write a CSV of build and query measurements.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error, 3 corrupt index.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from logging.config import dictConfig
from pathlib import Path

from sparselce import (
    CORPUS_KINDS,
    MODES,
    ConfigError,
    IndexFormatError,
    SparseLceError,
)
from sparselce_cli.commands import (
    EXIT_CORRUPT_INDEX,
    EXIT_USAGE,
    UsageError,
    cmd_bench,
    cmd_build,
    cmd_query,
    cmd_verify,
)

logger = logging.getLogger(__name__)


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError(f"seed must lie in [0, 2^64), got {value}")
    return seed


def configure_logging(verbose: bool) -> None:
    """Send sparselce and CLI log records to stderr."""
    level = "DEBUG" if verbose else "INFO"
    dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {"plain": {"format": "%(levelname)s %(name)s: %(message)s"}},
            "handlers": {
                "stderr": {
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr",
                    "formatter": "plain",
                }
            },
            "loggers": {
                "sparselce": {"level": level, "handlers": ["stderr"]},
                "sparselce_cli": {"level": level, "handlers": ["stderr"]},
            },
        }
    )


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path, help="Text file, read as raw bytes")
    source.add_argument("--gen", choices=CORPUS_KINDS, help="Generate a corpus instead")
    parser.add_argument("--n", type=int, default=10_000, help="Generated corpus length")
    parser.add_argument("--sigma", type=int, default=2, help="Generated alphabet size")
    parser.add_argument("--seed", type=_seed, default=0, help="Seed for every random choice")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparselce",
        description="Build, query, verify and benchmark sparse LCE indexes.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="Build an index file")
    _add_input_arguments(build)
    build.add_argument("--tau", type=int, required=True)
    build.add_argument("--mode", choices=MODES, default="rand")
    build.add_argument("--out", type=Path, required=True, help="Index file to write")
    build.set_defaults(handler=cmd_build)

    query = commands.add_parser("query", help="Answer LCE queries from an index file")
    query.add_argument("--index", type=Path, required=True)
    pairs = query.add_mutually_exclusive_group(required=True)
    pairs.add_argument("--pairs", type=Path, help="File of 1-based 'i j' lines")
    pairs.add_argument("--random", type=int, metavar="K", help="K seeded random queries")
    query.add_argument("--seed", type=_seed, default=0)
    query.add_argument(
        "--verify", action="store_true", help="Re-check recorded periods and sample order on load"
    )
    query.set_defaults(handler=cmd_query)

    verify = commands.add_parser("verify", help="Cross-check against the oracles")
    _add_input_arguments(verify)
    verify.add_argument("--tau", type=int, required=True)
    verify.add_argument("--mode", choices=MODES, default="rand")
    verify.add_argument("--trials", type=int, default=1000)
    verify.set_defaults(handler=cmd_verify)

    bench = commands.add_parser("bench", help="Write benchmark rows as CSV")
    _add_input_arguments(bench)
    bench.add_argument("--tau-list", default="16,64,256", help="Comma-separated tau values")
    bench.add_argument("--modes", default="rand,det,dcover", help="Comma-separated modes")
    bench.add_argument("--queries", type=int, default=1000)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return int(args.handler(args))
    except IndexFormatError as e:
        logger.error("corrupt index: %s", e)
        for err in e.errors:
            logger.error("  %s", err)
        return EXIT_CORRUPT_INDEX
    except ConfigError as e:
        logger.error("%s", e)
        for err in e.errors:
            loc = ".".join(str(part) for part in err["loc"])
            logger.error("  %s: %s", loc, err["msg"])
        return EXIT_USAGE
    except (UsageError, SparseLceError, OSError) as e:
        logger.error("%s", e)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
