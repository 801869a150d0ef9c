# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Benchmark rows: build time, set size and query comparisons per (mode, tau)."""

from __future__ import annotations

import csv
import logging
import time
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass
from typing import TextIO

import numpy as np
from sparselce import DcIndex, IndexConfig, LceIndex, Text, build_index, make_config
from sparselce.partition_det import DetStats
from sparselce_cli.verify import sample_pairs

logger = logging.getLogger(__name__)

BENCH_COLUMNS = (
    "mode",
    "tau",
    "n",
    "set_size",
    "build_ms",
    "avg_comparisons",
    "max_comparisons",
    "peak_aux_words",
)


def set_size(index: LceIndex | DcIndex) -> int:
    """|P| for a partitioning-set index, |Q| for a difference-cover index."""
    if isinstance(index, DcIndex):
        return len(index)
    return len(index.pset.positions)


def timed_build(text: Text, config: IndexConfig) -> tuple[LceIndex | DcIndex, float, DetStats]:
    """Build an index and return it with the wall time in milliseconds and the build stats."""
    stats = DetStats()
    start = time.perf_counter()
    index = build_index(text, config, stats)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return index, elapsed_ms, stats


@dataclass(frozen=True)
class BenchRow:
    mode: str
    tau: int
    n: int
    set_size: int
    build_ms: float
    avg_comparisons: float
    max_comparisons: int
    peak_aux_words: int


def bench_cell(text: Text, config: IndexConfig, queries: int) -> BenchRow:
    """Measure one (mode, tau) cell with ``queries`` seeded random queries."""
    index, elapsed_ms, stats = timed_build(text, config)
    pairs = sample_pairs(text.n, queries, config.seed)
    counts = np.fromiter(
        (index.query(i, j).comparisons for i, j in pairs), dtype=np.int64, count=len(pairs)
    )
    row = BenchRow(
        mode=config.mode,
        tau=config.tau,
        n=text.n,
        set_size=set_size(index),
        build_ms=round(elapsed_ms, 3),
        avg_comparisons=round(float(counts.mean()), 3) if len(counts) else 0.0,
        max_comparisons=int(counts.max()) if len(counts) else 0,
        peak_aux_words=stats.peak_aux_words,
    )
    logger.debug("bench cell %s", row)
    return row


def run_bench(
    text: Text,
    modes: Sequence[str],
    taus: Sequence[int],
    queries: int,
    seed: int = 0,
) -> list[BenchRow]:
    """Measure every (mode, tau) cell, modes outermost.

    Raises:
        ConfigError: If a mode or tau fails validation.
        ParameterError: If a tau exceeds n.
    """
    rows = []
    for mode in modes:
        for tau in taus:
            rows.append(bench_cell(text, make_config(tau=tau, mode=mode, seed=seed), queries))
    return rows


def write_csv(rows: Iterable[BenchRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))
