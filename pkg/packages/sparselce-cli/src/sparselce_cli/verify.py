# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Cross-checks an index configuration against the brute-force oracles."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
from sparselce import (
    IndexConfig,
    Text,
    build_index,
    build_partitioning_set,
    build_sparse_index,
    find_runs,
)
from sparselce.oracle import check_pset, naive_lce, naive_runs, naive_ssa
from sparselce.periodicity import MIN_RUN_TAU

logger = logging.getLogger(__name__)

AnswerHook = Callable[[int, int, int], int]
"""Receives (i, j, lce) for every checked query and returns the answer to compare."""

EXCERPT_WIDTH = 32


def sample_pairs(n: int, count: int, seed: int) -> list[tuple[int, int]]:
    """Draw ``count`` query pairs in [1..n] from a generator seeded with ``seed``."""
    if count <= 0:
        return []
    rng = np.random.default_rng(seed)
    drawn = rng.integers(1, n + 1, size=(count, 2))
    return [(int(i), int(j)) for i, j in drawn]


def sample_positions(n: int, count: int, seed: int) -> list[int]:
    """Draw ``min(count, n)`` distinct positions, sorted."""
    size = min(count, n)
    if size <= 0:
        return []
    rng = np.random.default_rng([seed, 1])
    return sorted(int(p) + 1 for p in rng.choice(n, size=size, replace=False))


def excerpt(text: Text, position: int, width: int = EXCERPT_WIDTH) -> str:
    """Printable view of S[position..position+width-1], one character per symbol."""
    chars = []
    for symbol in text.substring(position, width):
        if symbol == 0:
            break
        byte = symbol - 1
        chars.append(chr(byte) if 32 <= byte < 127 else ".")
    return "".join(chars)


@dataclass
class Counterexample:
    """The first mismatch found by a check."""

    check: str
    positions: list[int]
    expected: Any
    actual: Any
    excerpt: str


@dataclass
class CheckCount:
    checked: int = 0
    failed: int = 0


@dataclass
class VerifyReport:
    """Per-check counts and the first counterexample, if any."""

    n: int
    tau: int
    mode: str
    trials: int
    checks: dict[str, CheckCount] = field(default_factory=dict)
    counterexample: Counterexample | None = None

    @property
    def passed(self) -> bool:
        return all(count.failed == 0 for count in self.checks.values())

    def record(self, check: str, ok: bool, witness: Callable[[], Counterexample]) -> None:
        count = self.checks.setdefault(check, CheckCount())
        count.checked += 1
        if ok:
            return
        count.failed += 1
        if self.counterexample is None:
            self.counterexample = witness()

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "tau": self.tau,
            "mode": self.mode,
            "trials": self.trials,
            "passed": self.passed,
            "checks": {name: asdict(count) for name, count in self.checks.items()},
            "counterexample": asdict(self.counterexample) if self.counterexample else None,
        }


def _check_lce(
    report: VerifyReport,
    text: Text,
    config: IndexConfig,
    trials: int,
    answer_hook: AnswerHook | None,
) -> None:
    report.checks.setdefault("lce", CheckCount())
    index = build_index(text, config)
    for i, j in sample_pairs(text.n, trials, config.seed):
        actual = index.query(i, j).lce
        if answer_hook is not None:
            actual = answer_hook(i, j, actual)
        expected = naive_lce(text, i, j)
        report.record(
            "lce",
            actual == expected,
            lambda i=i, j=j, expected=expected, actual=actual: Counterexample(
                "lce", [i, j], expected, actual, excerpt(text, i)
            ),
        )


def _check_pset(report: VerifyReport, text: Text, config: IndexConfig) -> None:
    pset_report = check_pset(text, build_partitioning_set(text, config))

    def witness() -> Counterexample:
        if pset_report.local_consistency:
            positions = list(pset_report.local_consistency[0])
        elif pset_report.compactness:
            positions = [pset_report.compactness[0]]
        else:
            positions = list(pset_report.forward_sync[0])
        return Counterexample(
            "pset",
            positions,
            "valid partitioning set",
            pset_report.errors[0],
            excerpt(text, positions[0]),
        )

    report.record("pset", pset_report.is_valid, witness)
    logger.debug("partitioning set size ratio %.3f", pset_report.size_ratio)


def _check_ssa(report: VerifyReport, text: Text, config: IndexConfig, trials: int) -> None:
    report.checks.setdefault("ssa", CheckCount())
    positions = sample_positions(text.n, trials, config.seed)
    if not positions:
        return
    actual = list(build_sparse_index(text, positions, config).ssa)
    expected = naive_ssa(text, positions)
    mismatch = next((k for k, (a, b) in enumerate(zip(expected, actual)) if a != b), None)

    def witness() -> Counterexample:
        k = mismatch if mismatch is not None else 0
        return Counterexample(
            "ssa", [expected[k], actual[k]], expected[k], actual[k], excerpt(text, expected[k])
        )

    report.record("ssa", mismatch is None and len(actual) == len(expected), witness)


def _check_runs(report: VerifyReport, text: Text, config: IndexConfig) -> None:
    report.checks.setdefault("runs", CheckCount())
    if config.tau < MIN_RUN_TAU:
        logger.debug("runs check skipped: tau %d below %d", config.tau, MIN_RUN_TAU)
        return
    actual = find_runs(text, config.tau)
    expected = naive_runs(text, config.tau)

    def witness() -> Counterexample:
        for a, b in zip(expected, actual):
            if a != b:
                return Counterexample(
                    "runs", [b.start, b.end], repr(a), repr(b), excerpt(text, b.start)
                )
        longer = expected if len(expected) > len(actual) else actual
        run = longer[min(len(expected), len(actual))]
        return Counterexample(
            "runs", [run.start, run.end], len(expected), len(actual), excerpt(text, run.start)
        )

    report.record("runs", actual == expected, witness)


def run_verification(
    text: Text,
    config: IndexConfig,
    trials: int,
    answer_hook: AnswerHook | None = None,
) -> VerifyReport:
    """Run the lce, pset, ssa and runs cross-checks.

    Args:
        text: Text to index.
        config: Index configuration under test.
        trials: Number of random LCE queries, also the sparse suffix sample size.
        answer_hook: Optional hook applied to every LCE answer before comparison.

    Returns:
        The report. ``report.passed`` is False as soon as any check failed.
    """
    if trials == 0:
        logger.warning("trials=0: the lce and ssa checks are vacuous")
    report = VerifyReport(n=text.n, tau=config.tau, mode=config.mode, trials=trials)
    _check_lce(report, text, config, trials, answer_hook)
    _check_pset(report, text, config)
    _check_ssa(report, text, config, trials)
    _check_runs(report, text, config)
    return report
