# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Subcommand handlers. Each takes the parsed arguments and returns an exit code."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from sparselce import (
    MODES,
    IndexConfig,
    Text,
    dump_index,
    generate,
    load_index,
    make_config,
)
from sparselce_cli.bench import run_bench, set_size, timed_build, write_csv
from sparselce_cli.verify import run_verification, sample_pairs

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CORRUPT_INDEX = 3


class UsageError(Exception):
    """Error raised for flag values argparse cannot reject by itself."""


def _emit(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True))


def load_text(args: argparse.Namespace) -> Text:
    """Read ``--input`` or generate the ``--gen`` corpus.

    Raises:
        OSError: If the input file cannot be read.
        UsageError: If the input file is empty.
    """
    if args.input is not None:
        data = Path(args.input).read_bytes()
        if not data:
            raise UsageError(f"input file {args.input} is empty")
        return Text.from_bytes(data)
    return Text.from_bytes(generate(args.gen, args.n, args.sigma, args.seed))


def index_config(args: argparse.Namespace) -> IndexConfig:
    return make_config(tau=args.tau, mode=args.mode, seed=args.seed)


def parse_int_list(value: str, flag: str) -> list[int]:
    """Parse a comma-separated list of integers such as ``16,64,256``."""
    items = [item.strip() for item in value.split(",") if item.strip()]
    if not items:
        raise UsageError(f"{flag} is empty")
    try:
        return [int(item) for item in items]
    except ValueError as e:
        raise UsageError(f"{flag} must list integers, got {value!r}") from e


def parse_modes(value: str) -> list[str]:
    modes = [item.strip() for item in value.split(",") if item.strip()]
    if not modes:
        raise UsageError("--modes is empty")
    unknown = [mode for mode in modes if mode not in MODES]
    if unknown:
        raise UsageError(f"unknown mode(s) {', '.join(unknown)}; choose from {', '.join(MODES)}")
    return modes


def read_pairs(path: Path, n: int) -> list[tuple[int, int]]:
    """Read whitespace-separated 1-based ``i j`` pairs, one per line.

    Blank lines are skipped. Every malformed or out-of-range line is reported.

    Raises:
        UsageError: Listing the offending line numbers.
    """
    pairs: list[tuple[int, int]] = []
    problems: list[str] = []
    with open(path, encoding="utf-8", errors="replace") as f:
        for number, line in enumerate(f, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 2:
                problems.append(f"line {number}: expected two integers, got {len(fields)} field(s)")
                continue
            try:
                i, j = int(fields[0]), int(fields[1])
            except ValueError:
                problems.append(f"line {number}: not an integer pair: {line.strip()!r}")
                continue
            if not (1 <= i <= n and 1 <= j <= n):
                problems.append(f"line {number}: positions must lie in [1, {n}]")
                continue
            pairs.append((i, j))
    if problems:
        raise UsageError(f"malformed pairs file {path}: " + "; ".join(problems))
    return pairs


def cmd_build(args: argparse.Namespace) -> int:
    text = load_text(args)
    config = index_config(args)
    index, elapsed_ms, stats = timed_build(text, config)
    dump_index(index, args.out)
    logger.info("wrote %r to %s", index, args.out)
    _emit(
        {
            "n": text.n,
            "tau": config.tau,
            "mode": config.mode,
            "set_size": set_size(index),
            "build_ms": round(elapsed_ms, 3),
            "peak_aux_words": stats.peak_aux_words,
        }
    )
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    index = load_index(args.index, verify=args.verify)
    if args.pairs is not None:
        pairs = read_pairs(args.pairs, index.n)
    else:
        if args.random < 0:
            raise UsageError(f"--random must be non-negative, got {args.random}")
        pairs = sample_pairs(index.n, args.random, args.seed)
    for i, j in pairs:
        result = index.query(i, j)
        _emit({"i": i, "j": j, "lce": result.lce, "comparisons": result.comparisons})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 0:
        raise UsageError(f"--trials must be non-negative, got {args.trials}")
    text = load_text(args)
    report = run_verification(text, index_config(args), args.trials)
    _emit(report.to_dict())
    if report.passed:
        return EXIT_OK
    witness = report.counterexample
    if witness is not None:
        logger.error(
            "%s check failed at positions %s: expected %s, got %s; text %r",
            witness.check,
            witness.positions,
            witness.expected,
            witness.actual,
            witness.excerpt,
        )
    return EXIT_VERIFY_FAILED


def cmd_bench(args: argparse.Namespace) -> int:
    taus = parse_int_list(args.tau_list, "--tau-list")
    modes = parse_modes(args.modes)
    if args.queries < 0:
        raise UsageError(f"--queries must be non-negative, got {args.queries}")
    text = load_text(args)
    rows = run_bench(text, modes, taus, args.queries, seed=args.seed)
    write_csv(rows, sys.stdout)
    return EXIT_OK
