# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""LCE index over a partitioning set.

The index keeps one symbol per block (the partitioning string), a suffix
array with LCP and range-minimum support over it, the cumulative block
starts, and a sampled successor array. A query compares a short prefix
directly, jumps over whole equal blocks once both suffixes are aligned on
block starts, and finishes with a scan that skips through aligned periodic
blocks.
"""

from __future__ import annotations

import hashlib
import logging
from bisect import bisect_right
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from sparselce.errors import ContractError, InvariantError
from sparselce.suffix_core import SparseTable, lcp_kasai, sort_strings, suffix_array
from sparselce.text import Text
from sparselce.types import PartitioningSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QueryResult:
    """An LCE answer with the number of character comparisons spent on it."""

    lce: int
    comparisons: int


def block_key(text: Text, pset: PartitioningSet, start: int, end: int) -> tuple[int, ...]:
    """Sort key of the block S[start..end].

    A block with a recorded period that is longer than 2 * tau is keyed by its
    first 2 * tau characters followed by its negated length. Real symbols are
    positive, so such keys never collide with full-content keys.
    """
    length = end - start + 1
    if start in pset.block_periods and length > 2 * pset.tau:
        return (*text.substring(start, 2 * pset.tau), -length)
    return text.substring(start, length)


def rank_blocks(text: Text, pset: PartitioningSet) -> tuple[list[int], int]:
    """Rank the blocks of ``pset`` so that equal ranks mean identical blocks.

    Returns:
        The rank of every block, left to right, and the number of distinct ranks.
    """
    keys = [block_key(text, pset, start, end) for start, end in pset.blocks()]
    ranks = sort_strings(keys)
    return ranks, max(ranks, default=0)


def verify_block_periods(text: Text, pset: PartitioningSet) -> None:
    """Check every recorded block period against the text.

    Raises:
        InvariantError: If a recorded period does not hold over its block.
    """
    symbols = text.padded
    for start, end in pset.blocks():
        period = pset.block_periods.get(start)
        if period is None:
            continue
        for k in range(start + period, end + 1):
            if symbols[k] != symbols[k - period]:
                raise InvariantError(
                    f"block [{start}..{end}] does not have recorded period {period} "
                    f"(mismatch at {k})"
                )


class LceIndex:
    """LCE queries in O(delta) character comparisons using O(|P|) words.

    Built once by :func:`build_lce` and never mutated afterwards.
    """

    def __init__(
        self,
        text: Text,
        pset: PartitioningSet,
        s_p: Sequence[int],
        sa: Sequence[int],
        lcp: Sequence[int],
        levels: list[np.ndarray] | None = None,
        samples: np.ndarray | None = None,
    ):
        if pset.n != text.n:
            raise ContractError(f"partitioning set covers n={pset.n}, text has n={text.n}")
        self.text = text
        self.pset = pset
        self.s_p = np.asarray(s_p, dtype=np.int64)
        self.sa = np.asarray(sa, dtype=np.int64)
        self.lcp = np.asarray(lcp, dtype=np.int64)
        self.table = SparseTable(self.lcp, levels)

        starts = list(pset.boundaries)
        if len(starts) != len(self.s_p):
            raise ContractError("partitioning string length does not match the block count")
        self.starts: list[int] = [*starts, text.n + 1]
        self.periods: list[int] = [pset.block_periods.get(s, 0) for s in starts]
        self.suffix_rank = np.empty(len(self.sa), dtype=np.int64)
        self.suffix_rank[self.sa] = np.arange(len(self.sa), dtype=np.int64)

        self.positions = np.asarray(pset.positions, dtype=np.int64)
        if samples is None:
            marks = np.arange(text.n // pset.tau + 1, dtype=np.int64) * pset.tau
            samples = np.searchsorted(self.positions, marks, side="left").astype(np.int64)
        self.samples = samples
        for array in (self.s_p, self.sa, self.lcp, self.suffix_rank, self.positions, self.samples):
            array.setflags(write=False)

    @property
    def n(self) -> int:
        return self.text.n

    @property
    def delta(self) -> int:
        return self.pset.delta

    def __repr__(self) -> str:
        return f"LceIndex(n={self.n}, tau={self.pset.tau}, blocks={len(self.s_p)})"

    def successor(self, position: int) -> int:
        """Return min{p in P : p >= position}, or n + 1."""
        if position > self.n:
            return self.n + 1
        k = int(self.samples[max(position, 0) // self.pset.tau])
        positions = self.positions
        while k < len(positions) and positions[k] < position:
            k += 1
        return int(positions[k]) if k < len(positions) else self.n + 1

    def block_of(self, position: int) -> int:
        """Index of the block containing ``position``."""
        return bisect_right(self.starts, position, 0, len(self.s_p)) - 1

    def block_lcp(self, bi: int, bj: int) -> int:
        """Character length of the longest run of identical blocks starting at bi and bj."""
        if bi == bj:
            return self.n + 1 - self.starts[bi]
        ri, rj = int(self.suffix_rank[bi]), int(self.suffix_rank[bj])
        lo, hi = min(ri, rj), max(ri, rj)
        count = self.table.minimum(lo, hi - 1)
        return self.starts[bi + count] - self.starts[bi]

    def _periodic_jump(self, x: int, y: int, matched: int) -> int:
        """Offsets that provably match once S[x-matched..x-1] equals S[y-matched..y-1]."""
        if x > self.n or y > self.n:
            return 0
        bx = self.block_of(x)
        period = self.periods[bx]
        if period == 0 or matched < period or x - period < self.starts[bx]:
            return 0
        by = self.block_of(y)
        if self.periods[by] != period or y - period < self.starts[by]:
            return 0
        return min(self.starts[bx + 1] - x, self.starts[by + 1] - y)

    def _scan(self, i: int, j: int, offset: int, limit: int | None) -> tuple[int, bool, int]:
        """Extend a match from ``offset``; returns (offset, mismatch found, comparisons)."""
        symbols = self.text
        comparisons = 0
        while limit is None or offset < limit:
            jump = self._periodic_jump(i + offset, j + offset, offset)
            if jump:
                offset += jump
                continue
            comparisons += 1
            if symbols[i + offset] != symbols[j + offset]:
                return offset, True, comparisons
            offset += 1
        return offset, False, comparisons

    def query(self, i: int, j: int) -> QueryResult:
        """Instrumented LCE query.

        Raises:
            PositionRangeError: If i or j is outside [1..n].
        """
        self.text.check_position(i)
        self.text.check_position(j)
        if i == j:
            return QueryResult(lce=self.n - i + 1, comparisons=0)

        delta = self.delta
        offset, done, spent = self._scan(i, j, 0, 3 * delta)
        if done:
            return QueryResult(lce=offset, comparisons=spent)

        alpha = self.successor(i + delta) - i
        if alpha == self.successor(j + delta) - j and i + alpha <= self.n and j + alpha <= self.n:
            offset, done, used = self._scan(i, j, offset, alpha)
            spent += used
            if done:
                return QueryResult(lce=offset, comparisons=spent)
            jump = self.block_lcp(self.block_of(i + alpha), self.block_of(j + alpha))
            offset = max(offset, alpha + jump)

        offset, _, used = self._scan(i, j, offset, None)
        return QueryResult(lce=offset, comparisons=spent + used)

    def lce(self, i: int, j: int) -> int:
        """Length of the longest common prefix of S[i..n] and S[j..n]."""
        return self.query(i, j).lce

    def state_digest(self) -> str:
        """Digest of every table, for immutability checks."""
        digest = hashlib.blake2b(digest_size=16)
        digest.update(self.text.digest().encode())
        for array in (self.s_p, self.sa, self.lcp, self.positions, self.samples):
            digest.update(np.ascontiguousarray(array, dtype="<i8").tobytes())
        for level in self.table.levels:
            digest.update(np.ascontiguousarray(level, dtype="<i8").tobytes())
        return digest.hexdigest()


def build_lce(text: Text, pset: PartitioningSet) -> LceIndex:
    """Build the LCE index of ``text`` over the partitioning set ``pset``.

    Raises:
        ContractError: If the set was built for another text length.
        InvariantError: If a recorded block period does not hold.
    """
    if pset.n != text.n:
        raise ContractError(f"partitioning set covers n={pset.n}, text has n={text.n}")
    verify_block_periods(text, pset)
    s_p, distinct = rank_blocks(text, pset)
    sa = suffix_array(s_p)
    lcp = lcp_kasai(s_p, sa)
    index = LceIndex(text, pset, s_p, sa, lcp)
    logger.debug(
        "build_lce(n=%d, tau=%d, delta=%d): %d blocks, %d distinct",
        text.n,
        pset.tau,
        pset.delta,
        len(s_p),
        distinct,
    )
    return index
