# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""sparselce-cli - Command-line harness for sparselce indexes."""

from sparselce_cli.bench import BENCH_COLUMNS, BenchRow, run_bench, write_csv
from sparselce_cli.cli import build_parser, main
from sparselce_cli.verify import Counterexample, VerifyReport, run_verification

__version__ = "0.1.0"

__all__ = [
    # Entry point
    "main",
    "build_parser",
    # Verification
    "run_verification",
    "VerifyReport",
    "Counterexample",
    # Benchmarks
    "run_bench",
    "write_csv",
    "BenchRow",
    "BENCH_COLUMNS",
]
