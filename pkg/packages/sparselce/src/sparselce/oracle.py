# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Brute-force references for LCE, suffix order, runs and partitioning sets.

Nothing here reuses the indexing algorithms; every answer comes from direct
character comparison. Fingerprints only bucket candidates. Use on small inputs only.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cmp_to_key

import numpy as np

from sparselce.hashing import Fingerprinter
from sparselce.text import Text
from sparselce.types import PartitioningSet, Run


def naive_lce(text: Text, i: int, j: int) -> int:
    """min{k >= 0 : S[i+k] != S[j+k]}, reading sentinels past the end.

    Raises:
        PositionRangeError: If i or j is outside [1..n].
    """
    text.check_position(i)
    text.check_position(j)
    if i == j:
        return text.n - i + 1
    k = 0
    while text[i + k] == text[j + k]:
        k += 1
    return k


def naive_ssa(text: Text, positions: Iterable[int]) -> list[int]:
    """Sort suffixes by full character comparison."""

    def compare(a: int, b: int) -> int:
        if a == b:
            return 0
        k = naive_lce(text, a, b)
        return -1 if text[a + k] < text[b + k] else 1

    return sorted(set(positions), key=cmp_to_key(compare))


def _smallest_period(symbols: Sequence[int]) -> int:
    m = len(symbols)
    for q in range(1, m + 1):
        if all(symbols[k] == symbols[k - q] for k in range(q, m)):
            return q
    return m


def _holds(symbols: Sequence[int], start: int, stop: int, period: int) -> bool:
    return all(symbols[k] == symbols[k - period] for k in range(start + period, stop))


def naive_runs(text: Text, tau: int) -> list[Run]:
    """Every maximal substring of length >= tau whose smallest period is at most tau // 6."""
    symbols = text.padded
    n = text.n
    found: set[tuple[int, int, int]] = set()
    for p in range(1, tau // 6 + 1):
        k = p + 1
        while k <= n:
            if symbols[k] != symbols[k - p]:
                k += 1
                continue
            first = k
            while k <= n and symbols[k] == symbols[k - p]:
                k += 1
            start, end = first - p, k - 1
            if end - start + 1 >= tau and _smallest_period(symbols[start : end + 1]) == p:
                found.add((start, end, p))
    return [Run(start=s, end=e, period=p) for s, e, p in sorted(found)]


def count_fingerprint_collisions(text: Text, length: int, fingerprints: Sequence[int]) -> int:
    """Pairs of distinct windows sharing a fingerprint.

    Args:
        text: The text.
        length: Window length.
        fingerprints: Fingerprint of the window starting at position k + 1, for each k.
    """
    groups: dict[int, Counter[tuple[int, ...]]] = defaultdict(Counter)
    for offset, value in enumerate(fingerprints):
        groups[value][text.substring(offset + 1, length)] += 1
    collisions = 0
    for contents in groups.values():
        total = sum(contents.values())
        same = sum(c * (c - 1) // 2 for c in contents.values())
        collisions += total * (total - 1) // 2 - same
    return collisions


@dataclass
class PsetReport:
    """Outcome of a brute-force partitioning-set check."""

    n: int
    tau: int
    delta: int
    size: int
    local_consistency: list[tuple[int, int]] = field(default_factory=list)
    compactness: list[int] = field(default_factory=list)
    forward_sync: list[tuple[int, int]] = field(default_factory=list)

    @property
    def size_ratio(self) -> float:
        """|P| * tau / n."""
        return self.size * self.tau / self.n

    @property
    def is_valid(self) -> bool:
        return not (self.local_consistency or self.compactness or self.forward_sync)

    @property
    def errors(self) -> list[str]:
        messages = [
            f"positions {i} and {j} share a context but not membership"
            for i, j in self.local_consistency
        ]
        messages += [
            f"block at {start} is longer than {self.tau} without a verified short period"
            for start in self.compactness
        ]
        messages += [
            f"positions {i} and {j} agree past their next block but blocks differ"
            for i, j in self.forward_sync
        ]
        return messages


def _shifted(text: Text, left: int, right: int) -> Text:
    """S with every symbol raised by one and ``left``/``right`` sentinel stand-ins of 1."""
    return Text([1] * left + [s + 1 for s in text] + [1] * right)


class _WindowHashes:
    """O(1) window fingerprints, equal to ``phi.window``, from one prefix table."""

    def __init__(self, phi: Fingerprinter, text: Text):
        self.phi = phi
        prefix = [0]
        for s in text:
            prefix.append((prefix[-1] * phi.base + s) % phi.modulus)
        self.prefix = prefix

    def __call__(self, start: int, length: int) -> int:
        shifted = self.prefix[start - 1] * self.phi.power(length)
        return (self.prefix[start + length - 1] - shifted) % self.phi.modulus


def check_pset(text: Text, pset: PartitioningSet, seed: int = 0) -> PsetReport:
    """Check local consistency, compactness, forward synchronization and size.

    Contexts and block prefixes are bucketed by fingerprint, so memory stays
    linear in n. Every reported violation is confirmed by direct comparison.
    """
    n, tau, delta = text.n, pset.tau, pset.delta
    members = set(pset.positions)
    report = PsetReport(n=n, tau=tau, delta=delta, size=len(pset.positions))

    symbols = text.padded
    starts = sorted(members | {1})
    ends = [*starts[1:], n + 1]
    lengths = {p: q - p for p, q in zip(starts, ends) if p in members}
    longest = max(lengths.values(), default=0)
    padded = _shifted(text, delta, longest + delta + 1)
    phi = Fingerprinter.create(padded.n, np.random.default_rng(seed), exponent=2)
    window = _WindowHashes(phi, padded)

    width = 2 * delta + 1
    contexts: dict[int, list[int]] = defaultdict(list)
    for i in range(1, n + 1):
        contexts[window(i, width)].append(i)
    for group in contexts.values():
        if all(i in members for i in group) or not any(i in members for i in group):
            continue
        exact: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for i in group:
            exact[text.substring(i - delta, width)].append(i)
        for same in exact.values():
            inside = [i for i in same if i in members]
            outside = [i for i in same if i not in members]
            if inside and outside:
                report.local_consistency.append((inside[0], outside[0]))

    for start, stop in zip(starts, ends):
        if stop - start <= tau:
            continue
        period = pset.block_periods.get(start)
        if period is None or period > tau or not _holds(symbols, start, stop, period):
            report.compactness.append(start)

    # a and b violate forward sync when lce(a, b) > min(len) + delta but the lengths differ;
    # bucket every position with a block at least as long by its prefix of that span.
    ordered = sorted(lengths)
    for length in sorted(set(lengths.values())):
        span = length + delta + 1
        prefixes: dict[int, list[int]] = defaultdict(list)
        for p in ordered:
            if lengths[p] >= length:
                prefixes[window(p + delta, span)].append(p)
        for group in prefixes.values():
            shorter = [p for p in group if lengths[p] == length]
            for a in shorter:
                b = next(
                    (
                        b
                        for b in group
                        if lengths[b] > length and naive_lce(text, a, b) > length + delta
                    ),
                    None,
                )
                if b is not None:
                    report.forward_sync.append((min(a, b), max(a, b)))
                    break
    return report
