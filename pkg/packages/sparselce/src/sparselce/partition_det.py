# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Deterministic hierarchical decomposition into a forward synchronized partitioning set.

Level 0 has one block per character. Level mu is built from level mu - 1:

1. Sub-blocks of length >= (3/2)^mu are kept.
2. Maximal runs of identical shorter sub-blocks are merged into one block.
3. Longer stretches of other sub-blocks are cut at local minima of labels
   obtained by deterministic coin tossing over their contents.
4. Short stretches (and the unlabeled tail of long ones) are merged in pairs
   from the right.

Each level is a generator over the starts of the level below, so building a
set keeps only a bounded window of blocks alive per level.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Literal

from sparselce.config import DecompositionConfig
from sparselce.errors import ContractError, ParameterError
from sparselce.periodicity import partitioning_set
from sparselce.text import Text
from sparselce.types import PartitioningSet

logger = logging.getLogger(__name__)

Block = tuple[int, int]

BlockKind = Literal["large", "repeat", "other"]


def log_star(x: float) -> int:
    """Iterated base-2 logarithm, with log*(x) = 1 for x <= 2."""
    count = 1
    while x > 2:
        x = math.log2(x)
        count += 1
    return count


def label_rounds(bits: int) -> int:
    """Number of reduction rounds after which labels of ``bits`` bits are below 6."""
    value = (1 << max(bits, 0)) - 1
    rounds = 0
    while value >= 6:
        value = 2 * (value.bit_length() - 1) + 1
        rounds += 1
    return rounds


def alphabet_reduce_step(left_label: int, right_label: int) -> int:
    """Return 2 * psi + bit(left_label, psi), psi the lowest bit where the labels differ.

    Raises:
        ContractError: If the labels are equal.
    """
    if left_label == right_label:
        raise ContractError(f"equal neighbouring labels {left_label} cannot be reduced")
    diff = left_label ^ right_label
    psi = (diff & -diff).bit_length() - 1
    return 2 * psi + ((left_label >> psi) & 1)


def reduce_to_six(symbols: Sequence[int]) -> list[int]:
    """Reduce a sequence with distinct neighbours to labels in {0..5}.

    Each round reduces a label against its right neighbour; the last label is
    reduced against its left neighbour so the sequence keeps its length.

    Raises:
        ContractError: If two neighbouring symbols are equal.
    """
    values = [int(s) for s in symbols]
    if len(values) <= 1:
        return [0] * len(values)
    for a, b in zip(values, values[1:]):
        if a == b:
            raise ContractError(f"neighbouring symbols are equal ({a})")
    while max(values) >= 6:
        last = alphabet_reduce_step(values[-1], values[-2])
        values = [alphabet_reduce_step(a, b) for a, b in zip(values, values[1:])]
        values.append(last)
    return values


def det_levels(tau: int) -> int:
    """Top level L: the largest L >= 0 with (3/2)^L <= tau / 12."""
    level = 0
    while 12 * 3 ** (level + 1) <= tau * 2 ** (level + 1):
        level += 1
    return level


def _is_large(length: int, mu: int) -> bool:
    return length * 2**mu >= 3**mu


def level_rounds(n: int, mu: int, bits: int, config: DecompositionConfig) -> int:
    """Coin-tossing rounds J used at level mu."""
    longest = math.ceil(1.5**mu)
    return max(config.log_star_multiplier * log_star(n), label_rounds(bits * longest), 2)


@dataclass
class DetStats:
    """Instrumentation of a streaming build."""

    levels: int = 0
    rounds: list[int] = field(default_factory=list)
    peak_aux_words: int = 0
    _live: dict[int, int] = field(default_factory=dict, repr=False)

    def update(self, level: int, words: int) -> None:
        self._live[level] = words
        total = sum(self._live.values())
        if total > self.peak_aux_words:
            self.peak_aux_words = total


def _pairing_starts(first: int, count: int) -> list[int]:
    """Sequence indices that start blocks when merging right to left in pairs."""
    if count <= 0:
        return []
    if count <= 3:
        return [first]
    if count % 2:
        return [first, *range(first + 3, first + count, 2)]
    return list(range(first, first + count, 2))


def _pi_symbol(symbols: tuple[int, ...], start: int, end: int, bits: int) -> int:
    value = 0
    for k in range(start, end + 1):
        value = (value << bits) | symbols[k]
    return value


class _CoinTossingRun:
    """Streams one maximal sequence of "other" sub-blocks into level-mu block starts."""

    def __init__(
        self,
        symbols: tuple[int, ...],
        bits: int,
        rounds: int,
        level: int,
        stats: DetStats | None,
    ):
        self.symbols = symbols
        self.bits = bits
        self.rounds = rounds
        self.level = level
        self.stats = stats
        self._reset()

    def _reset(self) -> None:
        self.count = 0
        self.pending: deque[tuple[int, int]] = deque()
        self.labels: deque[int] = deque(maxlen=3)
        self.previous: list[int | None] = [None] * (self.rounds + 1)

    def push(self, start: int, end: int) -> Iterator[int]:
        index = self.count
        self.count += 1
        self.pending.append((index, start))
        current = _pi_symbol(self.symbols, start, end, self.bits)
        layer: list[int | None] = [current]
        for r in range(1, self.rounds + 1):
            left = self.previous[r - 1]
            if left is None:
                break
            current = alphabet_reduce_step(left, current)
            layer.append(current)
        self.previous = layer + [None] * (self.rounds + 1 - len(layer))
        if len(layer) == self.rounds + 1:
            self.labels.append(current)
        if self.stats is not None:
            self.stats.update(self.level, len(self.pending) + 2 * (self.rounds + 1) + 3)

        decided = index - self.rounds - 1
        if decided < 0:
            return
        i, position = self.pending.popleft()
        if i == 0:
            yield position
        elif i >= 2 and self.labels[1] < self.labels[0] and self.labels[1] < self.labels[2]:
            yield position

    def close(self) -> Iterator[int]:
        if self.count == 0:
            return
        k = self.count
        indices = {i: position for i, position in self.pending}
        if k <= self.rounds:
            chosen = _pairing_starts(0, k)
        else:
            chosen = [0] if k - self.rounds - 1 == 0 else []
            chosen += _pairing_starts(k - self.rounds, self.rounds)
        for i in chosen:
            yield indices[i]
        self._reset()
        if self.stats is not None:
            self.stats.update(self.level, 0)


def _blocks_from_starts(starts: Iterable[int], end: int) -> Iterator[Block]:
    iterator = iter(starts)
    previous = next(iterator, None)
    if previous is None:
        return
    for start in iterator:
        yield previous, start - 1
        previous = start
    yield previous, end


def _classify_stream(
    blocks: Iterable[Block], mu: int, symbols: tuple[int, ...]
) -> Iterator[tuple[BlockKind, int, int]]:
    """Tag sub-blocks; identical neighbours come out already merged as one "repeat"."""
    iterator = iter(blocks)
    current = next(iterator, None)
    group_start: int | None = None
    while current is not None:
        following = next(iterator, None)
        start, end = current
        if _is_large(end - start + 1, mu):
            yield "large", start, end
        elif (
            following is not None
            and following[1] - following[0] == end - start
            and symbols[start : end + 1] == symbols[following[0] : following[1] + 1]
        ):
            if group_start is None:
                group_start = start
        elif group_start is not None:
            yield "repeat", group_start, end
            group_start = None
        else:
            yield "other", start, end
        current = following


def _level_starts(
    starts: Iterable[int],
    mu: int,
    end: int,
    symbols: tuple[int, ...],
    bits: int,
    rounds: int,
    stats: DetStats | None = None,
) -> Iterator[int]:
    run = _CoinTossingRun(symbols, bits, rounds, mu, stats)
    for kind, start, stop in _classify_stream(_blocks_from_starts(starts, end), mu, symbols):
        if kind == "other":
            yield from run.push(start, stop)
        else:
            yield from run.close()
            yield start
    yield from run.close()


def _symbol_bits(text: Text) -> int:
    return max(max(text.padded).bit_length(), 1)


@dataclass(frozen=True)
class BlockSequence:
    """A maximal typed sequence of sub-blocks (types 1 to 4)."""

    kind: int
    blocks: tuple[Block, ...]


def classify(text: Text, blocks: Sequence[Block], mu: int, rounds: int) -> list[BlockSequence]:
    """Split consecutive level-(mu-1) blocks into typed maximal sequences."""
    symbols = text.padded
    result: list[BlockSequence] = []
    others: list[Block] = []
    cursor = 0

    def flush() -> None:
        if others:
            kind = 3 if len(others) >= rounds else 4
            result.append(BlockSequence(kind=kind, blocks=tuple(others)))
            others.clear()

    for kind, start, stop in _classify_stream(blocks, mu, symbols):
        members: list[Block] = []
        while cursor < len(blocks) and blocks[cursor][1] <= stop:
            members.append(blocks[cursor])
            cursor += 1
        if kind == "other":
            others.extend(members)
            continue
        flush()
        result.append(BlockSequence(kind=1 if kind == "large" else 2, blocks=tuple(members)))
    flush()
    return result


def next_level(text: Text, blocks: Sequence[Block], mu: int, rounds: int) -> list[Block]:
    """Build the level-mu blocks over consecutive level-(mu-1) blocks."""
    if not blocks:
        return []
    end = blocks[-1][1]
    starts = _level_starts(
        (b[0] for b in blocks), mu, end, text.padded, _symbol_bits(text), rounds
    )
    return list(_blocks_from_starts(starts, end))


def _check_tau(text: Text, tau: int) -> None:
    if not 1 <= tau <= text.n:
        raise ParameterError("tau", f"must lie in [1, n={text.n}], got {tau}")


def iter_det_positions(
    text: Text,
    tau: int,
    config: DecompositionConfig | None = None,
    stats: DetStats | None = None,
) -> Iterator[int]:
    """Stream the top-level block starts in increasing order.

    Raises:
        ParameterError: If tau is outside [1, n].
    """
    _check_tau(text, tau)
    config = config or DecompositionConfig()
    n = text.n
    symbols = text.padded
    bits = _symbol_bits(text)
    top = det_levels(tau)
    starts: Iterator[int] = iter(range(1, n + 1))
    for mu in range(1, top + 1):
        rounds = level_rounds(n, mu, bits, config)
        if stats is not None:
            stats.rounds.append(rounds)
        starts = _level_starts(starts, mu, n, symbols, bits, rounds, stats)
    if stats is not None:
        stats.levels = top
    return starts


def det_delta(text: Text, tau: int, config: DecompositionConfig | None = None) -> int:
    """Locality radius of the set built at tau."""
    config = config or DecompositionConfig()
    top = det_levels(tau)
    if top == 0:
        return 1
    bits = _symbol_bits(text)
    widest = max(level_rounds(text.n, mu, bits, config) for mu in range(1, top + 1))
    return math.ceil(6 * 1.5**top) * (widest + 2)


def build_det(
    text: Text,
    tau: int,
    config: DecompositionConfig | None = None,
    stats: DetStats | None = None,
) -> PartitioningSet:
    """Build a forward synchronized (tau, O(tau log* n))-partitioning set deterministically."""
    config = config or DecompositionConfig()
    stats = stats if stats is not None else DetStats()
    positions = list(iter_det_positions(text, tau, config, stats))
    logger.debug(
        "build_det(n=%d, tau=%d): %d levels, %d positions, peak %d aux words",
        text.n,
        tau,
        stats.levels,
        len(positions),
        stats.peak_aux_words,
    )
    return partitioning_set(
        text, positions, tau=tau, delta=det_delta(text, tau, config), method="det"
    )
