# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Suffix array, LCP and RMQ kernels over integer sequences.

All functions in this module work on plain 0-based Python sequences.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Sequence

import numpy as np

from sparselce.errors import ContractError


def suffix_array(s: Sequence[int]) -> list[int]:
    """Sort the suffixes of an integer sequence with SA-IS.

    Args:
        s: The sequence. Any integers are accepted; they are rank-compressed first.

    Returns:
        0-based start offsets of the suffixes in lexicographic order.
    """
    if not s:
        return []
    alphabet = {value: rank for rank, value in enumerate(sorted(set(s)), start=1)}
    t = [alphabet[value] for value in s]
    t.append(0)
    return _sais(t, len(alphabet) + 1)[1:]


def _sais(t: list[int], alphabet_size: int) -> list[int]:
    """SA-IS over t, whose last symbol is a unique minimum."""
    n = len(t)
    if n == 1:
        return [0]

    stype = [False] * n
    stype[-1] = True
    for i in range(n - 2, -1, -1):
        stype[i] = t[i] < t[i + 1] or (t[i] == t[i + 1] and stype[i + 1])

    def is_lms(i: int) -> bool:
        return i > 0 and stype[i] and not stype[i - 1]

    bucket_sizes = [0] * alphabet_size
    for c in t:
        bucket_sizes[c] += 1

    def bucket_heads() -> list[int]:
        heads, offset = [], 0
        for size in bucket_sizes:
            heads.append(offset)
            offset += size
        return heads

    def bucket_tails() -> list[int]:
        tails, offset = [], 0
        for size in bucket_sizes:
            offset += size
            tails.append(offset - 1)
        return tails

    sa = [-1] * n

    def induce(lms_order: list[int]) -> None:
        for k in range(n):
            sa[k] = -1
        tails = bucket_tails()
        for i in reversed(lms_order):
            c = t[i]
            sa[tails[c]] = i
            tails[c] -= 1
        heads = bucket_heads()
        for k in range(n):
            j = sa[k] - 1
            if sa[k] > 0 and not stype[j]:
                c = t[j]
                sa[heads[c]] = j
                heads[c] += 1
        tails = bucket_tails()
        for k in range(n - 1, -1, -1):
            j = sa[k] - 1
            if sa[k] > 0 and stype[j]:
                c = t[j]
                sa[tails[c]] = j
                tails[c] -= 1

    lms_positions = [i for i in range(1, n) if is_lms(i)]
    induce(lms_positions)

    def lms_equal(a: int, b: int) -> bool:
        if a == n - 1 or b == n - 1:
            return a == b
        k = 0
        while True:
            a_end, b_end = is_lms(a + k), is_lms(b + k)
            if k > 0 and a_end and b_end:
                return True
            if a_end != b_end or t[a + k] != t[b + k]:
                return False
            k += 1

    names = [-1] * n
    name = -1
    previous = -1
    for i in sa:
        if not is_lms(i):
            continue
        if previous < 0 or not lms_equal(previous, i):
            name += 1
        names[i] = name
        previous = i

    reduced = [names[i] for i in lms_positions]
    if name + 1 < len(reduced):
        reduced_sa = _sais(reduced, name + 1)
    else:
        reduced_sa = [0] * len(reduced)
        for position, value in enumerate(reduced):
            reduced_sa[value] = position

    induce([lms_positions[k] for k in reduced_sa])
    return sa


def lcp_kasai(s: Sequence[int], sa: Sequence[int]) -> list[int]:
    """Kasai et al. LCP array; entry k is the LCP of suffixes sa[k] and sa[k+1]."""
    m = len(s)
    if m != len(sa):
        raise ContractError("suffix array length does not match the sequence")
    rank = [0] * m
    for position, start in enumerate(sa):
        rank[start] = position
    lcp = [0] * max(m - 1, 0)
    h = 0
    for i in range(m):
        r = rank[i]
        if r == m - 1:
            h = 0
            continue
        j = sa[r + 1]
        while i + h < m and j + h < m and s[i + h] == s[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp


class SparseTable:
    """Range-minimum queries answered in O(1) after O(m log m) preprocessing.

    Ties resolve to the leftmost index.
    """

    def __init__(self, values: Sequence[int], levels: list[np.ndarray] | None = None):
        self._values = np.asarray(values, dtype=np.int64)
        self._levels = levels if levels is not None else self._build(self._values)

    @staticmethod
    def _build(values: np.ndarray) -> list[np.ndarray]:
        m = len(values)
        levels = [np.arange(m, dtype=np.int64)]
        j = 1
        while (1 << j) <= m:
            previous = levels[-1]
            half = 1 << (j - 1)
            width = m - (1 << j) + 1
            left = previous[:width]
            right = previous[half : half + width]
            levels.append(np.where(values[left] <= values[right], left, right))
            j += 1
        return levels

    def __len__(self) -> int:
        return len(self._values)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def levels(self) -> list[np.ndarray]:
        return self._levels

    def query(self, lo: int, hi: int) -> int:
        """Index of the minimum in values[lo..hi] (inclusive, leftmost on ties).

        Raises:
            ContractError: If the range is empty or out of bounds.
        """
        if lo > hi or lo < 0 or hi >= len(self._values):
            raise ContractError(f"empty or out-of-bounds range [{lo}..{hi}]")
        k = (hi - lo + 1).bit_length() - 1
        a = int(self._levels[k][lo])
        b = int(self._levels[k][hi - (1 << k) + 1])
        return a if self._values[a] <= self._values[b] else b

    def minimum(self, lo: int, hi: int) -> int:
        return int(self._values[self.query(lo, hi)])


def sort_strings(keys: Sequence[Sequence[int]]) -> list[int]:
    """Rank integer strings lexicographically with an MSD radix pass.

    Args:
        keys: The strings to rank.

    Returns:
        Dense 1-based ranks; equal strings share a rank and a proper prefix
        ranks before its extensions.
    """
    ranks = [0] * len(keys)
    next_rank = 1
    # Stack entries: (indices, depth, finished). Popping order is lexicographic.
    stack: list[tuple[list[int], int, bool]] = [(list(range(len(keys))), 0, False)]
    while stack:
        indices, depth, finished = stack.pop()
        if not indices:
            continue
        if finished or len(indices) == 1:
            for i in indices:
                ranks[i] = next_rank
            next_rank += 1
            continue
        ended: list[int] = []
        buckets: dict[int, list[int]] = defaultdict(list)
        for i in indices:
            key = keys[i]
            if len(key) == depth:
                ended.append(i)
            else:
                buckets[key[depth]].append(i)
        for symbol in sorted(buckets, reverse=True):
            stack.append((buckets[symbol], depth + 1, False))
        if ended:
            stack.append((ended, depth, True))
    return ranks
