# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Randomized Las-Vegas selection of forward synchronized partitioning sets.

A position j carries the ID h(phi(S[j..j+tau-1])). Inside plain regions every
position that attains the minimum ID of some tau-window is selected; runs
contribute their start and, when followed by a plain region, the selection
made over their last tau positions.
"""

from __future__ import annotations

import logging
import math
from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from sparselce.config import SelectionConfig
from sparselce.errors import ParameterError
from sparselce.hashing import Fingerprinter, MinwiseHasher
from sparselce.periodicity import MIN_RUN_TAU, find_runs, partitioning_set, segment
from sparselce.text import Text
from sparselce.types import PartitioningSet, Run

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelectionPlan:
    """Where selection happens for a given tau.

    ``forced`` holds positions selected regardless of IDs. Each region
    (lo, hi) is scanned with every tau-window [l..l+tau-1] inside it.
    """

    n: int
    tau: int
    forced: tuple[int, ...]
    regions: tuple[tuple[int, int], ...]
    runs: tuple[Run, ...] = ()


def _check_tau(text: Text, tau: int) -> None:
    if not 1 <= tau <= text.n:
        raise ParameterError("tau", f"must lie in [1, n={text.n}], got {tau}")


def selection_plan(text: Text, tau: int, phi: Fingerprinter | None = None) -> SelectionPlan:
    """Compose runs and plain segments into forced positions and scan regions."""
    n = text.n
    runs = find_runs(text, tau, phi) if tau >= MIN_RUN_TAU and n >= tau else []
    if not runs:
        regions = ((1, n - tau),) if n - tau >= tau else ()
        return SelectionPlan(n=n, tau=tau, forced=(), regions=regions)

    segments = segment(text, runs).segments
    forced: list[int] = []
    regions: list[tuple[int, int]] = []
    for k, seg in enumerate(segments):
        if seg.kind == "plain":
            if k == 0 and seg.length >= tau:
                regions.append((1, seg.end))
            continue
        forced.append(seg.start)
        if k + 1 == len(segments) or segments[k + 1].kind != "plain":
            continue
        following = segments[k + 1]
        margin = seg.end - tau + 1
        if following.end == n:
            if n - tau + 1 <= seg.end <= n - 1:
                forced.append(seg.end + 1)
            else:
                regions.append((margin, n - tau))
        else:
            regions.append((margin, following.end))
    return SelectionPlan(
        n=n, tau=tau, forced=tuple(forced), regions=tuple(regions), runs=tuple(runs)
    )


def _ids(
    text: Text, start: int, stop: int, tau: int, phi: Fingerprinter, h: MinwiseHasher
) -> list[int]:
    return [h(fp) for fp in phi.iter_windows(text, tau, start, stop)]


@dataclass
class ScanStats:
    """Counters reported by the sliding-window scanner."""

    windows: int = 0
    step_backs: int = 0


def select_plain(
    text: Text,
    lo: int,
    hi: int,
    tau: int,
    phi: Fingerprinter,
    h: MinwiseHasher,
    stats: ScanStats | None = None,
) -> list[int]:
    """Select every position attaining the minimum ID of a tau-window inside [lo..hi].

    The scan keeps the current window minimum and its rightmost position; when
    that position leaves the window the window is recomputed from scratch
    (a step-back).

    Returns:
        Selected positions in increasing order; empty when hi - lo + 1 < tau.
    """
    if hi - lo + 1 < tau:
        return []
    stats = stats if stats is not None else ScanStats()
    symbols = text.padded
    selected: list[int] = []

    def rescan(left: int) -> tuple[int, int]:
        window = _ids(text, left, left + tau - 1, tau, phi, h)
        best = min(window)
        rightmost = left
        for offset, value in enumerate(window):
            if value == best:
                position = left + offset
                if not selected or position > selected[-1]:
                    selected.append(position)
                rightmost = position
        return best, rightmost

    best, rightmost = rescan(lo)
    stats.windows += 1
    entering = phi.window(text, lo + tau - 1, tau)
    for left in range(lo + 1, hi - tau + 2):
        stats.windows += 1
        position = left + tau - 1
        entering = phi.slide(entering, symbols[position - 1], symbols[position + tau - 1], tau)
        if rightmost < left:
            stats.step_backs += 1
            best, rightmost = rescan(left)
            continue
        value = h(entering)
        if value <= best:
            best, rightmost = value, position
            selected.append(position)
    return selected


def _draw(
    text: Text, rng: np.random.Generator, config: SelectionConfig
) -> tuple[Fingerprinter, MinwiseHasher]:
    phi = Fingerprinter.create(text.n, rng, exponent=config.fingerprint_exponent)
    h = MinwiseHasher.random(rng, degree=config.minwise_degree)
    return phi, h


def _select(
    text: Text, plan: SelectionPlan, phi: Fingerprinter, h: MinwiseHasher
) -> tuple[list[int], ScanStats]:
    stats = ScanStats()
    positions = set(plan.forced)
    for lo, hi in plan.regions:
        positions.update(select_plain(text, lo, hi, plan.tau, phi, h, stats))
    return sorted(positions), stats


def build_rand(
    text: Text, tau: int, seed: int = 0, config: SelectionConfig | None = None
) -> PartitioningSet:
    """Build a forward synchronized (2tau, 2tau)-partitioning set in expected linear time.

    Args:
        text: The text.
        tau: Selection parameter in [1, n].
        seed: Seed for the fingerprint base and the min-wise hash.
        config: Selection tunables.

    Raises:
        ParameterError: If tau is outside [1, n].
    """
    _check_tau(text, tau)
    config = config or SelectionConfig()
    rng = np.random.default_rng(seed)
    phi, h = _draw(text, rng, config)
    plan = selection_plan(text, tau, phi)
    positions, stats = _select(text, plan, phi, h)
    logger.debug(
        "build_rand(n=%d, tau=%d): %d runs, %d positions, %d windows, %d step-backs",
        text.n,
        tau,
        len(plan.runs),
        len(positions),
        stats.windows,
        stats.step_backs,
    )
    return partitioning_set(text, positions, tau=2 * tau, delta=2 * tau, method="rand")


def _reach_selected(ids: list[int], index: int, tau: int) -> bool:
    value = ids[index]
    left = 0
    k = index - 1
    while k >= 0 and left < tau - 1 and ids[k] >= value:
        left += 1
        k -= 1
    right = 0
    k = index + 1
    while k < len(ids) and left + right < tau - 1 and ids[k] >= value:
        right += 1
        k += 1
    return left + right + 1 >= tau


def count_interval(
    text: Text,
    plan: SelectionPlan,
    start: int,
    stop: int,
    phi: Fingerprinter,
    h: MinwiseHasher,
) -> int:
    """Count positions of [start..stop] the plan would select, by local scanning."""
    tau = plan.tau
    forced = set(plan.forced)
    count = 0
    for lo, hi in plan.regions:
        a, b = max(lo, start), min(hi, stop)
        if a > b or hi - lo + 1 < tau:
            continue
        span_lo, span_hi = max(lo, a - tau + 1), min(hi, b + tau - 1)
        ids = _ids(text, span_lo, span_hi, tau, phi, h)
        for x in range(a, b + 1):
            if x in forced:
                continue
            if _reach_selected(ids, x - span_lo, tau):
                count += 1
    first = bisect_left(plan.forced, start)
    last = bisect_right(plan.forced, stop)
    return count + len(set(plan.forced[first:last]))


def estimate_size_sampling(
    text: Text,
    tau: int,
    phi: Fingerprinter,
    h: MinwiseHasher,
    m: int | None,
    rng: np.random.Generator | None = None,
    plan: SelectionPlan | None = None,
) -> float:
    """Estimate the mean number of selected positions per tau-interval.

    Intervals [i*tau+1..(i+1)*tau] are sampled with replacement. With
    ``m=None`` every interval is counted once.

    Returns:
        The mean count C-bar; C-bar * n / tau estimates the set size.
    """
    _check_tau(text, tau)
    intervals = text.n // tau
    if intervals == 0:
        return 0.0
    plan = plan or selection_plan(text, tau, phi)
    if m is None:
        chosen = np.arange(intervals)
    else:
        if m < 1:
            raise ParameterError("m", "sample count must be positive")
        rng = rng if rng is not None else np.random.default_rng(0)
        chosen = rng.integers(0, intervals, size=m)
    total = 0
    for i in chosen:
        start = int(i) * tau + 1
        total += count_interval(text, plan, start, start + tau - 1, phi, h)
    return total / len(chosen)


def build_rand_whp(
    text: Text, tau: int, seed: int = 0, config: SelectionConfig | None = None
) -> PartitioningSet:
    """Build with size bounded by c' * n / tau, retrying hash functions as needed.

    Small tau (below ceil(log2(n)^2), or not above the coarse width on tiny
    texts) accepts a function once the sampled estimate is at most c' - 1;
    larger tau races several functions with bounded deques. Exhausted retries
    fall back to build_rand.
    """
    _check_tau(text, tau)
    config = config or SelectionConfig()
    n = text.n
    large = tau >= math.ceil(math.log2(max(n, 2)) ** 2)
    if large and tau > config.resolved_base_width(n):
        return select_whp_large_tau(text, tau, config.resolved_trials(n), seed, config)

    rng = np.random.default_rng(seed)
    phi = Fingerprinter.create(n, rng, exponent=config.fingerprint_exponent)
    plan = selection_plan(text, tau, phi)
    m = config.resolved_sample_count(n, max(1, n // tau))
    limit = config.abandon_factor - 1
    retries = config.resolved_retries(n)
    for attempt in range(retries):
        h = MinwiseHasher.random(rng, degree=config.minwise_degree)
        estimate = estimate_size_sampling(text, tau, phi, h, m, rng=rng, plan=plan)
        logger.debug("rand-whp attempt %d: estimate %.3f (limit %.3f)", attempt, estimate, limit)
        if estimate <= limit:
            positions, _ = _select(text, plan, phi, h)
            return partitioning_set(
                text, positions, tau=2 * tau, delta=2 * tau, method="rand-whp"
            )
    logger.warning(
        "rand-whp: %d hash functions exceeded the size bound; falling back to rand", retries
    )
    return build_rand(text, tau, seed, config)


@dataclass(frozen=True)
class RegionCandidates:
    """Coarse candidates of one scan region with their tau-window fingerprints."""

    lo: int
    hi: int
    positions: tuple[int, ...]
    fingerprints: tuple[int, ...]


@dataclass
class DequeCount:
    """Outcome of counting one hash function's selection."""

    count: int = 0
    step_backs: int = 0
    abandoned: bool = False
    positions: list[int] = field(default_factory=list)


class _BoundedMinDeque:
    """Sliding-window minimum deque holding at most ``capacity`` entries plus ties.

    When a candidate cannot be stored the deque becomes ``incomplete``: it
    holds a prefix of the unbounded deque and any dropped entry has an ID
    larger than its back.
    """

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.entries: deque[tuple[int, int]] = deque()
        self.incomplete = False

    def push(self, position: int, value: int) -> None:
        entries = self.entries
        popped = False
        while entries and entries[-1][1] > value:
            entries.pop()
            popped = True
        if popped or not entries:
            if not entries and self.incomplete and not popped:
                return
            entries.append((position, value))
            self.incomplete = False
            return
        back = entries[-1][1]
        if value == back:
            entries.append((position, value))
            self.incomplete = False
        elif len(entries) < self.capacity and not self.incomplete:
            entries.append((position, value))
        else:
            self.incomplete = True

    def expire(self, left: int) -> None:
        while self.entries and self.entries[0][0] < left:
            self.entries.popleft()

    def reset(self) -> None:
        self.entries.clear()
        self.incomplete = False


class LargeTauSelector:
    """Counts and materializes subset selections from a coarse candidate set.

    Candidates are a (base_width, base_width)-selection inside each scan region;
    a hash function h selects the candidates with the smallest h-ID in some
    tau-window of the region.
    """

    def __init__(
        self,
        text: Text,
        plan: SelectionPlan,
        regions: list[RegionCandidates],
        capacity: int,
        bound: float,
    ):
        self.text = text
        self.plan = plan
        self.regions = regions
        self.capacity = capacity
        self.bound = bound
        self._events = [self._event_lefts(region) for region in regions]

    @classmethod
    def build(
        cls,
        text: Text,
        tau: int,
        phi: Fingerprinter,
        base_hasher: MinwiseHasher,
        base_width: int,
        trials: int,
        abandon_factor: float,
    ) -> LargeTauSelector:
        """Compute the plan and the coarse candidates once for all hash functions."""
        plan = selection_plan(text, tau, phi)
        regions: list[RegionCandidates] = []
        for lo, hi in plan.regions:
            coarse = select_plain(text, lo, hi, base_width, phi, base_hasher)
            fingerprints = list(phi.iter_windows(text, tau, lo, hi))
            regions.append(
                RegionCandidates(
                    lo=lo,
                    hi=hi,
                    positions=tuple(coarse),
                    fingerprints=tuple(fingerprints[p - lo] for p in coarse),
                )
            )
        n = text.n
        capacity = max(1, math.ceil(abandon_factor * n / (tau * trials)))
        return cls(text, plan, regions, capacity, abandon_factor * n / tau)

    def _event_lefts(self, region: RegionCandidates) -> list[int]:
        tau = self.plan.tau
        last = region.hi - tau + 1
        if last < region.lo:
            return []
        lefts = {region.lo}
        for p in region.positions:
            for left in (p - tau + 1, p + 1):
                if region.lo <= left <= last:
                    lefts.add(left)
        return sorted(lefts)

    def count(self, h: MinwiseHasher, collect: bool = False) -> DequeCount:
        """Count (optionally collect) the positions h selects, abandoning past the bound."""
        result = DequeCount(count=len(set(self.plan.forced)))
        if collect:
            result.positions.extend(self.plan.forced)
        if not collect and result.count > self.bound:
            result.abandoned = True
            return result
        tau = self.plan.tau
        forced = set(self.plan.forced)
        for region, lefts in zip(self.regions, self._events):
            ids = [h(fp) for fp in region.fingerprints]
            positions = region.positions
            window = _BoundedMinDeque(self.capacity)
            frontier = 0
            last_counted = 0
            for left in lefts:
                right = left + tau - 1
                while frontier < len(positions) and positions[frontier] <= right:
                    window.push(positions[frontier], ids[frontier])
                    frontier += 1
                window.expire(left)
                if not window.entries and window.incomplete:
                    result.step_backs += 1
                    window.reset()
                    for k in range(bisect_left(positions, left), frontier):
                        window.push(positions[k], ids[k])
                if not window.entries:
                    continue
                best = window.entries[0][1]
                for position, value in window.entries:
                    if value != best:
                        break
                    if position > last_counted:
                        last_counted = position
                        if position not in forced:
                            result.count += 1
                            if collect:
                                result.positions.append(position)
                            elif result.count > self.bound:
                                result.abandoned = True
                                return result
        return result


def select_whp_large_tau(
    text: Text,
    tau: int,
    trials: int,
    seed: int = 0,
    config: SelectionConfig | None = None,
) -> PartitioningSet:
    """Race ``trials`` hash functions over a coarse candidate set and keep the first small one.

    Raises:
        ParameterError: If tau does not exceed the coarse width.
    """
    _check_tau(text, tau)
    config = config or SelectionConfig()
    n = text.n
    base_width = config.resolved_base_width(n)
    if tau <= base_width:
        raise ParameterError("tau", f"must exceed base width {base_width}, got {tau}")
    if trials < 1:
        raise ParameterError("trials", "must be positive")
    rng = np.random.default_rng(seed)
    phi = Fingerprinter.create(n, rng, exponent=config.fingerprint_exponent)
    base_hasher = MinwiseHasher.random(rng, degree=config.minwise_degree)
    selector = LargeTauSelector.build(
        text, tau, phi, base_hasher, base_width, trials, config.abandon_factor
    )
    for attempt in range(trials):
        h = MinwiseHasher.random(rng, degree=config.minwise_degree)
        outcome = selector.count(h)
        logger.debug(
            "rand-whp trial %d: count %d, %d step-backs, abandoned=%s",
            attempt,
            outcome.count,
            outcome.step_backs,
            outcome.abandoned,
        )
        if outcome.abandoned:
            continue
        positions = selector.count(h, collect=True).positions
        return partitioning_set(
            text,
            positions,
            tau=2 * tau,
            delta=2 * tau + 2 * base_width,
            method="rand-whp",
        )
    logger.warning("rand-whp: all %d trials exceeded the size bound; falling back to rand", trials)
    return build_rand(text, tau, seed, config)
