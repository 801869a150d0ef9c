# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Periods, runs detection and runs-partitioning.

Runs here are the maximal periodic substrings of length at least tau whose
principal period is at most tau // 6. They are found from candidate
intervals of length tau // 2: fingerprint minima hint at a period, and every
hint is confirmed by comparing characters.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np

from sparselce.errors import InvariantError, ParameterError
from sparselce.hashing import Fingerprinter
from sparselce.text import Text
from sparselce.types import PartitioningSet, Run, Segment, SegmentList

logger = logging.getLogger(__name__)

MIN_RUN_TAU = 6


def principal_period(s: Sequence[int]) -> int:
    """Return the length of the shortest period of s.

    Args:
        s: A non-empty symbol sequence.

    Raises:
        ParameterError: If s is empty.
    """
    m = len(s)
    if m == 0:
        raise ParameterError("s", "principal period of the empty string is undefined")
    border = [0] * m
    k = 0
    for i in range(1, m):
        while k > 0 and s[i] != s[k]:
            k = border[k - 1]
        if s[i] == s[k]:
            k += 1
        border[i] = k
    return m - border[-1]


def fine_wilf_reduce(length: int, p: int, q: int) -> int | None:
    """Return gcd(p, q) when a string of this length with periods p and q must have it."""
    if p < 1 or q < 1:
        raise ParameterError("period", "periods must be positive")
    g = math.gcd(p, q)
    if length >= p + q - g:
        return g
    return None


def _has_period(symbols: tuple[int, ...], start: int, end: int, period: int) -> bool:
    return all(symbols[k] == symbols[k - period] for k in range(start + period, end + 1))


def _smallest_dividing_period(symbols: tuple[int, ...], start: int, end: int, d: int) -> int:
    for p in range(1, d + 1):
        if d % p == 0 and _has_period(symbols, start, end, p):
            return p
    return d


def find_runs(text: Text, tau: int, phi: Fingerprinter | None = None) -> list[Run]:
    """Find every run of length >= tau with principal period <= tau // 6.

    Args:
        text: The text.
        tau: Detection length, at least 6.
        phi: Fingerprinter used for candidate hints. A fixed one is drawn if omitted.

    Returns:
        The runs sorted by start.

    Raises:
        ParameterError: If tau < 6.
    """
    if tau < MIN_RUN_TAU:
        raise ParameterError("tau", f"runs detection needs tau >= {MIN_RUN_TAU}, got {tau}")
    n = text.n
    if n < tau:
        return []
    if phi is None:
        phi = Fingerprinter.create(n, np.random.default_rng(0))

    half, third, width = tau // 2, tau // 3, tau // 6
    symbols = text.padded
    runs: list[Run] = []
    candidates = 0
    last_end = 0
    alpha = 0
    while (alpha + 1) * half <= n:
        lo, hi = alpha * half + 1, (alpha + 1) * half
        alpha += 1
        if hi <= last_end:
            continue
        values = list(phi.iter_windows(text, width, lo, lo + third - 1))
        smallest = min(values)
        minima = [k for k, v in enumerate(values) if v == smallest]
        if len(minima) < 2:
            continue
        candidates += 1
        hint = min(b - a for a, b in zip(minima, minima[1:]))
        if _has_period(symbols, lo, hi, hint):
            period = _smallest_dividing_period(symbols, lo, hi, hint)
        else:
            period = principal_period(symbols[lo : hi + 1])
            logger.debug("Fingerprint hint %d rejected at interval [%d..%d]", hint, lo, hi)
        if period > width:
            continue
        start, end = lo, hi
        while start > 1 and symbols[start - 1] == symbols[start - 1 + period]:
            start -= 1
        while end < n and symbols[end + 1] == symbols[end + 1 - period]:
            end += 1
        if end - start + 1 < tau:
            continue
        runs.append(Run(start=start, end=end, period=period))
        last_end = end

    logger.debug("find_runs(tau=%d): %d candidate intervals, %d runs", tau, candidates, len(runs))
    runs.sort(key=lambda r: r.start)
    return runs


def segment(text: Text, runs: Iterable[Run]) -> SegmentList:
    """Partition [1..n] into run segments and plain segments.

    Runs are processed right to left; a run overlapping the next stored run
    loses its right margin to it.

    Raises:
        InvariantError: If runs are unsorted, out of range, or one swallows another.
    """
    n = text.n
    ordered = list(runs)
    for run in ordered:
        if run.end > n:
            raise InvariantError(f"run [{run.start}..{run.end}] exceeds n={n}")
    for a, b in zip(ordered, ordered[1:]):
        if b.start <= a.start:
            raise InvariantError("runs must be sorted by strictly increasing start")

    pieces: list[Segment] = []
    next_start = n + 1
    for run in reversed(ordered):
        end = min(run.end, next_start - 1)
        if end < run.start:
            raise InvariantError(f"run starting at {run.start} is swallowed by its successor")
        if end + 1 <= next_start - 1:
            pieces.append(Segment(start=end + 1, end=next_start - 1, kind="plain"))
        pieces.append(Segment(start=run.start, end=end, kind="run", period=run.period))
        next_start = run.start
    if next_start > 1:
        pieces.append(Segment(start=1, end=next_start - 1, kind="plain"))
    pieces.reverse()
    return SegmentList(n=n, segments=tuple(pieces))


def partitioning_set(
    text: Text,
    positions: Iterable[int],
    tau: int,
    delta: int,
    method: str,
) -> PartitioningSet:
    """Wrap selected positions, recording the period of every block longer than tau."""
    n = text.n
    ordered = sorted(set(positions))
    starts = ordered if ordered and ordered[0] == 1 else [1, *ordered]
    ends = [*starts[1:], n + 1]
    symbols = text.padded
    periods: dict[int, int] = {}
    for start, stop in zip(starts, ends):
        if stop - start <= tau:
            continue
        period = principal_period(symbols[start:stop])
        if period <= tau:
            periods[start] = period
        else:
            logger.warning(
                "Block [%d..%d] longer than %d has no short period (principal %d)",
                start,
                stop - 1,
                tau,
                period,
            )
    return PartitioningSet(
        n=n,
        tau=tau,
        delta=delta,
        positions=tuple(ordered),
        block_periods=periods,
        method=method,  # type: ignore[arg-type]
    )
