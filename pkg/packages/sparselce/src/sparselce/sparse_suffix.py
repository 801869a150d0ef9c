# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Sparse suffix array and sparse suffix tree over an arbitrary position set.

Suffixes starting at partitioning-set positions are sorted through bounded
representative strings and a suffix array over their ranks. Any other set B
is then sorted by pairing the rank of a short window with the rank of the
partitioning-set suffix that follows it. Both orders are checked
pairwise with LCE queries and repaired by direct comparison if a check
fails; callers sorting through a deterministic set may skip the check.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from functools import cmp_to_key

import numpy as np

from sparselce.errors import ContractError
from sparselce.lce_index import LceIndex, build_lce
from sparselce.suffix_core import SparseTable, sort_strings, suffix_array
from sparselce.text import Text
from sparselce.types import PartitioningSet

logger = logging.getLogger(__name__)

LceFunction = Callable[[int, int], int]


def right_violation(text: Text, p: int, rho: int) -> int:
    """Return min{j >= p + rho : S[j] != S[j - rho]}, or n + 1 if period rho never breaks."""
    symbols = text.padded
    n = text.n
    j = p + rho
    while j <= n:
        if symbols[j] != symbols[j - rho]:
            return j
        j += 1
    return n + 1


def _augmentation(text: Text, anchor: int, rho: int, origin: int, tail: int) -> tuple[int, ...]:
    """Sign, signed distance and tail describing where period rho breaks after ``anchor``.

    The sign is -1 when the violating symbol is below the one the period
    predicts; a smaller distance then means a smaller suffix, and the
    distance is negated for +1 so that the same holds in reverse.
    """
    rv = right_violation(text, anchor, rho)
    distance = rv - origin
    if text[rv] < text[rv - rho]:
        head: tuple[int, ...] = (-1, distance)
    else:
        head = (1, -distance)
    return (*head, *text.substring(rv, tail))


def representative_key(text: Text, pset: PartitioningSet, start: int) -> tuple[int, ...]:
    """Bounded sort key of the suffix at block start ``start``."""
    delta = pset.delta
    prefix = text.substring(start, 3 * delta)
    rho = pset.block_periods.get(start)
    if rho is None:
        return prefix
    return (*prefix, *_augmentation(text, start, rho, start, 2 * delta))


def _in_order(text: Text, lce: LceFunction, a: int, b: int) -> bool:
    length = lce(a, b)
    return text[a + length] < text[b + length]


def _checked_order(
    text: Text, order: list[int], lce: LceFunction, what: str, verify: bool = True
) -> list[int]:
    if not verify:
        return order
    if all(_in_order(text, lce, a, b) for a, b in zip(order, order[1:])):
        return order
    logger.warning("%s order failed its LCE check; re-sorting %d suffixes", what, len(order))

    def compare(a: int, b: int) -> int:
        if a == b:
            return 0
        return -1 if _in_order(text, lce, a, b) else 1

    return sorted(order, key=cmp_to_key(compare))


def ssa_of_pset(
    text: Text,
    pset: PartitioningSet,
    lce_index: LceIndex | None = None,
    verify: bool = True,
) -> list[int]:
    """Sort the suffixes starting at the positions of ``pset``.

    With ``verify`` off the order is returned without the pairwise LCE check;
    callers do so only for deterministic sets, whose keys are consistent.

    Raises:
        ContractError: If the set is not forward synchronized.
    """
    if not pset.forward_sync:
        raise ContractError(
            "sorting through the partitioning string needs a forward synchronized set"
        )
    starts = pset.boundaries
    ranks = sort_strings([representative_key(text, pset, s) for s in starts])
    order = [starts[k] for k in suffix_array(ranks)]
    selected = set(pset.positions)
    order = [p for p in order if p in selected]
    if not verify:
        return order
    lce_index = lce_index or build_lce(text, pset)
    return _checked_order(text, order, lce_index.lce, "partitioning-set suffix")


def _window_key(
    text: Text, pset: PartitioningSet, index: LceIndex, i: int
) -> tuple[int, ...]:
    delta = pset.delta
    window = text.substring(i, 3 * delta)
    left, right = i + delta, i + 3 * delta - 1
    if left > text.n or right > text.n:
        return window
    block = index.block_of(left)
    rho = index.periods[block]
    if rho == 0 or index.starts[block + 1] - 1 < right:
        return window
    return (*window, *_augmentation(text, index.starts[block], rho, i, 2 * delta))


def ssa_of_B(  # noqa: N802
    text: Text,
    positions: Iterable[int],
    pset: PartitioningSet,
    pset_ssa: Sequence[int],
    lce_index: LceIndex | None = None,
    verify: bool = True,
) -> list[int]:
    """Sort the suffixes starting at ``positions`` using the sorted partitioning-set suffixes.

    ``verify`` behaves as in :func:`ssa_of_pset`.

    Raises:
        PositionRangeError: If a position is outside [1..n].
    """
    chosen = sorted(set(positions))
    for i in chosen:
        text.check_position(i)
    if not chosen:
        return []
    lce_index = lce_index or build_lce(text, pset)
    window_ranks = sort_strings([_window_key(text, pset, lce_index, i) for i in chosen])
    pset_rank = {p: k + 1 for k, p in enumerate(pset_ssa)}
    follower_ranks = [
        pset_rank.get(lce_index.successor(i + pset.delta), 0) for i in chosen
    ]
    permutation = np.lexsort(
        (np.asarray(follower_ranks, dtype=np.int64), np.asarray(window_ranks, dtype=np.int64))
    )
    order = [chosen[int(k)] for k in permutation]
    return _checked_order(
        text, order, lce_index.lce, "sparse suffix", verify
    )


class SparseSuffixIndex:
    """Sparse suffix array, LCP array and compact trie over a position set.

    Leaf string depths count the terminating sentinel, so a leaf sits strictly
    below any internal node even when its suffix is a prefix of another.
    """

    def __init__(self, text: Text, ssa: Sequence[int], lcp: Sequence[int]):
        if len(lcp) != max(len(ssa) - 1, 0):
            raise ContractError("LCP array must have one entry per adjacent pair")
        self.text = text
        self.ssa: tuple[int, ...] = tuple(int(p) for p in ssa)
        self.lcp: tuple[int, ...] = tuple(int(v) for v in lcp)
        self._rank = {p: k for k, p in enumerate(self.ssa)}
        self._table = SparseTable(self.lcp)

        self.parent: list[int] = []
        self.depth: list[int] = []
        self.rep: list[int] = []
        self.leaf_position: list[int] = []
        self.children: list[list[int]] = []
        self._build_trie()

    def _new_node(self, parent: int, depth: int, rep: int, leaf: int) -> int:
        node = len(self.depth)
        self.parent.append(parent)
        self.depth.append(depth)
        self.rep.append(rep)
        self.leaf_position.append(leaf)
        self.children.append([])
        if parent >= 0:
            self.children[parent].append(node)
        return node

    def _build_trie(self) -> None:
        n = self.text.n
        root = self._new_node(-1, 0, self.ssa[0] if self.ssa else 1, -1)
        stack = [root]
        for k, p in enumerate(self.ssa):
            if k > 0:
                shared = self.lcp[k - 1]
                last = -1
                while self.depth[stack[-1]] > shared:
                    last = stack.pop()
                top = stack[-1]
                if self.depth[top] < shared:
                    # Split the edge into ``last`` with an internal node at depth ``shared``.
                    self.children[top].pop()
                    internal = self._new_node(top, shared, self.rep[last], -1)
                    self.parent[last] = internal
                    self.children[internal].append(last)
                    stack.append(internal)
            leaf = self._new_node(stack[-1], n - p + 2, p, p)
            stack.append(leaf)

    def __len__(self) -> int:
        return len(self.ssa)

    def __repr__(self) -> str:
        return f"SparseSuffixIndex(n={self.text.n}, suffixes={len(self.ssa)})"

    @property
    def node_count(self) -> int:
        return len(self.depth)

    @property
    def internal_count(self) -> int:
        return sum(1 for leaf in self.leaf_position[1:] if leaf < 0)

    def edge(self, node: int) -> tuple[int, int]:
        """Text range (start, length) labelling the edge into ``node``."""
        parent = self.parent[node]
        if parent < 0:
            return self.rep[node], 0
        return self.rep[node] + self.depth[parent], self.depth[node] - self.depth[parent]

    def lce(self, a: int, b: int) -> int:
        """LCE of two indexed suffixes.

        Raises:
            ContractError: If a or b is not an indexed position.
        """
        if a not in self._rank or b not in self._rank:
            missing = a if a not in self._rank else b
            raise ContractError(f"position {missing} is not indexed")
        if a == b:
            return self.text.n - a + 1
        ra, rb = self._rank[a], self._rank[b]
        lo, hi = min(ra, rb), max(ra, rb)
        return self._table.minimum(lo, hi - 1)

    def rank_of(self, position: int) -> int:
        """0-based rank of an indexed suffix, or -1."""
        return self._rank.get(position, -1)

    def to_records(self) -> list[tuple[int, int]]:
        """(position, LCP with the previous suffix) in suffix order."""
        return [(p, self.lcp[k - 1] if k else 0) for k, p in enumerate(self.ssa)]

    def to_parenthesized(self) -> str:
        """Trie topology: leaves print positions, internal nodes their children in parentheses."""
        if not self.ssa:
            return "()"
        rendered: dict[int, str] = {}
        stack: list[tuple[int, bool]] = [(0, False)]
        while stack:
            node, expanded = stack.pop()
            if self.leaf_position[node] >= 0:
                rendered[node] = str(self.leaf_position[node])
            elif expanded:
                inner = " ".join(rendered.pop(child) for child in self.children[node])
                rendered[node] = f"({inner})"
            else:
                stack.append((node, True))
                stack.extend((child, False) for child in reversed(self.children[node]))
        return rendered[0]


def build_sst(text: Text, ssa: Sequence[int], lce_index: LceIndex) -> SparseSuffixIndex:
    """Build the sparse suffix tree of an already sorted position list."""
    lcp = [lce_index.lce(a, b) for a, b in zip(ssa, ssa[1:])]
    index = SparseSuffixIndex(text, ssa, lcp)
    logger.debug(
        "build_sst: %d leaves, %d internal nodes", len(index), index.internal_count
    )
    return index
