# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Deterministic LCE through difference-cover subsampling of a fine partitioning set.

The fine set is the deterministic set at tau' = tau / ceil(sqrt(log* n)). Its
blocks receive tokens (one per tau' characters of the preceding block) and a
position is kept when one of its tokens has a rank in the difference cover
{t : t mod r = 0 or t mod r^2 < r}. Two suffixes that agree long enough then
reach a common offset where both positions are kept, and the sparse suffix
tree over the kept positions answers the rest.
"""

from __future__ import annotations

import logging
import math
from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from sparselce.config import DecompositionConfig
from sparselce.errors import InvariantError, ParameterError
from sparselce.lce_index import QueryResult, build_lce
from sparselce.partition_det import DetStats, build_det, det_delta, iter_det_positions, log_star
from sparselce.periodicity import principal_period
from sparselce.sparse_suffix import SparseSuffixIndex, build_sst, ssa_of_B, ssa_of_pset
from sparselce.text import Text

logger = logging.getLogger(__name__)


def cover_root(l_star: int) -> int:
    """r = ceil(sqrt(L*))."""
    return max(1, math.isqrt(max(l_star, 1) - 1) + 1)


def assign_tokens(lengths: Sequence[int], tau_prime: int) -> list[int]:
    """Tokens per block: the first block gets one, block i gets ceil(len(i - 1) / tau')."""
    if tau_prime < 1:
        raise ParameterError("tau_prime", "must be at least 1")
    if not lengths:
        return []
    return [1, *(-(-length // tau_prime) for length in lengths[:-1])]


def token_selected(t: int, r: int) -> bool:
    return t % r == 0 or t % (r * r) < r


def selected_residues(l_star: int) -> set[int]:
    """Residues modulo r^2 of the selected token ranks."""
    r = cover_root(l_star)
    return {t for t in range(r * r) if token_selected(t, r)}


def select_Q(stream: Iterable[tuple[int, int]], l_star: int) -> list[int]:  # noqa: N802
    """Keep each position owning at least one selected token.

    Args:
        stream: (position, token count) pairs in text order.
        l_star: log* n.
    """
    r = cover_root(l_star)
    chosen: list[int] = []
    token = 0
    for position, count in stream:
        if any(token_selected(t, r) for t in range(token, token + count)):
            chosen.append(position)
        token += count
    return chosen


def _token_stream(starts: Iterable[int], tau_prime: int) -> Iterator[tuple[int, int]]:
    previous: int | None = None
    for start in starts:
        yield start, 1 if previous is None else -(-(start - previous) // tau_prime)
        previous = start


def is_difference_cover(residues: Iterable[int], t: int) -> bool:
    """True when every difference modulo t is a difference of two residues."""
    values = sorted(set(residues))
    covered = {(a - b) % t for a in values for b in values}
    return len(covered) == t


def small_tau_dc(t: int) -> list[int]:
    """Difference cover modulo t of size O(sqrt(t)).

    Raises:
        ParameterError: If t < 1.
    """
    if t < 1:
        raise ParameterError("t", "must be at least 1")
    r = math.isqrt(t - 1) + 1
    residues = set(range(min(r, t))) | {(k * r) % t for k in range(r + 1)}
    # Greedy fix-up; the block construction alone covers every t <= r^2.
    for candidate in range(t):
        if is_difference_cover(residues, t):
            break
        residues.add(candidate)
    if not is_difference_cover(residues, t):
        raise InvariantError(f"no difference cover found modulo {t}")
    return sorted(residues)


@dataclass(frozen=True)
class GapRegion:
    """A region between kept positions with period ``period``."""

    start: int
    end: int
    period: int


class DcIndex:
    """LCE index over the difference-cover sample Q.

    A query compares symbols until both positions are in Q. Past a few
    context widths, a position inside a periodic gap region skips straight
    to the end of that region; the jump is taken from the recorded regions
    rather than from the next sample position, which :meth:`successor`
    still answers.
    """

    def __init__(
        self,
        text: Text,
        tau: int,
        tau_prime: int,
        l_star: int,
        delta: int,
        q_positions: Sequence[int],
        regions: Sequence[GapRegion],
        sst: SparseSuffixIndex,
    ):
        self.text = text
        self.tau = tau
        self.tau_prime = tau_prime
        self.l_star = l_star
        self.delta = delta
        self.q_positions = np.asarray(q_positions, dtype=np.int64)
        self.q_positions.setflags(write=False)
        self._q = frozenset(int(q) for q in q_positions)
        self._sorted_q = sorted(self._q)
        self.regions = tuple(regions)
        self._region_starts = [g.start for g in self.regions]
        self.sst = sst

    @property
    def n(self) -> int:
        return self.text.n

    def __len__(self) -> int:
        return len(self.q_positions)

    def __contains__(self, position: object) -> bool:
        return position in self._q

    def __repr__(self) -> str:
        return f"DcIndex(n={self.n}, tau={self.tau}, tau_prime={self.tau_prime}, q={len(self)})"

    def successor(self, position: int) -> int:
        """Return the smallest sample position >= ``position``, or n + 1."""
        k = bisect_left(self._sorted_q, position)
        return self._sorted_q[k] if k < len(self._sorted_q) else self.n + 1

    def _region_jump(self, x: int, y: int, matched: int) -> int:
        k = bisect_right(self._region_starts, x) - 1
        if k < 0:
            return 0
        gx = self.regions[k]
        if x > gx.end or matched < gx.period or x - gx.period < gx.start:
            return 0
        m = bisect_right(self._region_starts, y) - 1
        if m < 0:
            return 0
        gy = self.regions[m]
        if y > gy.end or gy.period != gx.period or y - gy.period < gy.start:
            return 0
        return min(gx.end - x, gy.end - y) + 1

    def query(self, i: int, j: int) -> QueryResult:
        """Instrumented LCE query.

        Raises:
            PositionRangeError: If i or j is outside [1..n].
        """
        self.text.check_position(i)
        self.text.check_position(j)
        if i == j:
            return QueryResult(lce=self.n - i + 1, comparisons=0)
        symbols = self.text
        q = self._q
        cutoff = 4 * self.delta
        offset = 0
        comparisons = 0
        while True:
            x, y = i + offset, j + offset
            if x in q and y in q:
                return QueryResult(lce=offset + self.sst.lce(x, y), comparisons=comparisons)
            if offset >= cutoff:
                jump = self._region_jump(x, y, offset)
                if jump:
                    offset += jump
                    continue
            comparisons += 1
            if symbols[x] != symbols[y]:
                return QueryResult(lce=offset, comparisons=comparisons)
            offset += 1

    def lce(self, i: int, j: int) -> int:
        return self.query(i, j).lce


def _gap_regions(text: Text, q_positions: Sequence[int], delta: int, tau: int) -> list[GapRegion]:
    symbols = text.padded
    starts = [1, *(q for q in q_positions if q > 1)]
    ends = [*starts[1:], text.n + 1]
    regions: list[GapRegion] = []
    for start, stop in zip(starts, ends):
        if stop - start <= 2 * delta:
            continue
        lo = start + delta
        period = principal_period(symbols[lo:stop])
        if period <= tau:
            regions.append(GapRegion(start=lo, end=stop - 1, period=period))
    return regions


def build_dc(
    text: Text,
    tau: int,
    config: DecompositionConfig | None = None,
    stats: DetStats | None = None,
) -> DcIndex:
    """Build the difference-cover LCE index.

    ``stats`` receives the instrumentation of the streamed fine set.

    Raises:
        ParameterError: If tau is outside [1, n].
    """
    n = text.n
    if not 1 <= tau <= n:
        raise ParameterError("tau", f"must lie in [1, n={n}], got {tau}")
    config = config or DecompositionConfig()
    l_star = log_star(n)
    r = cover_root(l_star)

    if tau < r:
        modulus = tau * tau
        cover = set(small_tau_dc(modulus))
        q_positions = [p for p in range(1, n + 1) if (p - 1) % modulus in cover]
        tau_prime, delta = 1, 1
    else:
        tau_prime = max(1, tau // r)
        stream = _token_stream(iter_det_positions(text, tau_prime, config, stats), tau_prime)
        q_positions = select_Q(stream, l_star)
        delta = det_delta(text, tau_prime, config)

    pset = build_det(text, tau, config)
    lce_index = build_lce(text, pset)
    pset_ssa = ssa_of_pset(text, pset, lce_index, verify=False)
    order = ssa_of_B(text, q_positions, pset, pset_ssa, lce_index, verify=False)
    sst = build_sst(text, order, lce_index)
    regions = _gap_regions(text, q_positions, delta, tau)
    logger.debug(
        "build_dc(n=%d, tau=%d): tau'=%d, L*=%d, |Q|=%d, %d periodic gaps",
        n,
        tau,
        tau_prime,
        l_star,
        len(q_positions),
        len(regions),
    )
    return DcIndex(text, tau, tau_prime, l_star, delta, q_positions, regions, sst)


def lce_dc(index: DcIndex, i: int, j: int) -> int:
    """LCE through the difference-cover index."""
    return index.query(i, j).lce
