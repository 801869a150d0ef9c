# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Tests for sparse suffix sorting and the sparse suffix tree."""

import itertools
from functools import partial

import pytest
from sparselce import (
    ContractError,
    LceIndex,
    PartitioningSet,
    PositionRangeError,
    SparseSuffixIndex,
    Text,
    build_det,
    build_lce,
    build_rand,
    build_sst,
    ssa_of_B,
    ssa_of_pset,
)
from sparselce.oracle import naive_lce, naive_ssa
from sparselce.sparse_suffix import _checked_order, right_violation


def make_sst(text: Text, positions: list[int]) -> SparseSuffixIndex:
    """Helper to create a sparse suffix tree through the single-character set."""
    pset = build_det(text, 1)
    index = build_lce(text, pset)
    order = ssa_of_B(text, positions, pset, ssa_of_pset(text, pset, index), index)
    return build_sst(text, order, index)


def count_lce_calls(index: LceIndex, monkeypatch: pytest.MonkeyPatch) -> list[tuple[int, int]]:
    """Helper to record every LCE query made through ``index``."""
    calls: list[tuple[int, int]] = []
    answer = index.lce

    def counting(i: int, j: int) -> int:
        calls.append((i, j))
        return answer(i, j)

    monkeypatch.setattr(index, "lce", counting)
    return calls


class TestRightViolation:
    """Tests for right_violation."""

    def test_examples(self) -> None:
        """Test the first position breaking the period."""
        assert right_violation(Text.from_string("abababac"), 1, 2) == 8
        assert right_violation(Text.from_string("aabaabaabb"), 1, 3) == 10

    def test_never_breaks(self) -> None:
        """Test a period holding to the end reports n + 1."""
        assert right_violation(Text.from_string("aaaa"), 1, 1) == 5


class TestSsaOfPset:
    """Tests for ssa_of_pset."""

    def test_rejects_unsynchronized_set(self) -> None:
        """Test sorting needs a forward synchronized set."""
        text = Text.from_string("abcabc")
        pset = PartitioningSet(n=6, tau=2, delta=1, positions=(3, 5), forward_sync=False)
        with pytest.raises(ContractError) as exc_info:
            ssa_of_pset(text, pset)
        assert "forward synchronized" in str(exc_info.value)

    @pytest.mark.parametrize("tau", [3, 8])
    def test_rand_set_sorted(self, corpus_text: Text, tau: int) -> None:
        """Test randomized-set suffixes come out in suffix order."""
        pset = build_rand(corpus_text, tau, seed=2)
        assert ssa_of_pset(corpus_text, pset) == naive_ssa(corpus_text, pset.positions)

    def test_unverified_det_order_skips_lce(
        self, corpus_text: Text, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test an unchecked deterministic order makes no LCE query and is still sorted."""
        pset = build_det(corpus_text, 18)
        index = build_lce(corpus_text, pset)
        calls = count_lce_calls(index, monkeypatch)

        order = ssa_of_pset(corpus_text, pset, index, verify=False)

        assert calls == []
        assert order == naive_ssa(corpus_text, pset.positions)

    def test_checked_order_queries_lce(
        self, random_text: Text, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test by default the order is confirmed with one LCE query per adjacent pair."""
        pset = build_det(random_text, 18)
        index = build_lce(random_text, pset)
        calls = count_lce_calls(index, monkeypatch)

        ssa_of_pset(random_text, pset, index)

        assert len(calls) == len(pset.positions) - 1

    def test_det_set_sorted(self, corpus_text: Text) -> None:
        """Test deterministic-set suffixes come out in suffix order."""
        pset = build_det(corpus_text, 18)
        assert ssa_of_pset(corpus_text, pset) == naive_ssa(corpus_text, pset.positions)


class TestSsaOfB:
    """Tests for ssa_of_B."""

    def test_banana(self, banana: Text) -> None:
        """Test the full suffix array of banana."""
        pset = build_det(banana, 1)
        index = build_lce(banana, pset)
        order = ssa_of_B(banana, range(1, 7), pset, ssa_of_pset(banana, pset, index), index)
        assert order == [6, 4, 2, 1, 5, 3]

    def test_empty_set(self, banana: Text) -> None:
        """Test no positions give an empty order."""
        pset = build_det(banana, 1)
        assert ssa_of_B(banana, [], pset, ssa_of_pset(banana, pset)) == []

    def test_rejects_bad_position(self, banana: Text) -> None:
        """Test positions must lie in [1..n]."""
        pset = build_det(banana, 1)
        with pytest.raises(PositionRangeError):
            ssa_of_B(banana, [2, 7], pset, ssa_of_pset(banana, pset))

    @pytest.mark.parametrize("tau", [2, 6, 12])
    def test_arbitrary_subset(self, corpus_text: Text, tau: int) -> None:
        """Test every third position sorted through a randomized set."""
        pset = build_rand(corpus_text, tau, seed=9)
        index = build_lce(corpus_text, pset)
        chosen = list(range(1, corpus_text.n + 1, 3))
        order = ssa_of_B(corpus_text, chosen, pset, ssa_of_pset(corpus_text, pset, index), index)
        assert order == naive_ssa(corpus_text, chosen)

    def test_exhaustive_binary_texts(self) -> None:
        """Test every binary text of length 7 with all positions."""
        for letters in itertools.product("ab", repeat=7):
            text = Text.from_string("".join(letters))
            expected = naive_ssa(text, range(1, 8))
            for pset in (build_det(text, 1), build_rand(text, 2, seed=1)):
                index = build_lce(text, pset)
                pset_ssa = ssa_of_pset(text, pset, index)
                assert ssa_of_B(text, range(1, 8), pset, pset_ssa, index) == expected

    def test_repair_logs_warning(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test a wrong order is re-sorted by direct comparison."""
        text = Text.from_string("banana")
        order = _checked_order(text, [1, 2, 3, 4, 5, 6], partial(naive_lce, text), "test")
        assert order == [6, 4, 2, 1, 5, 3]
        assert "re-sorting" in caplog.text

    def test_unverified_det_order_skips_lce(
        self, corpus_text: Text, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test sorting through a deterministic set without the check makes no LCE query."""
        pset = build_det(corpus_text, 18)
        index = build_lce(corpus_text, pset)
        pset_ssa = ssa_of_pset(corpus_text, pset, index, verify=False)
        calls = count_lce_calls(index, monkeypatch)
        chosen = list(range(1, corpus_text.n + 1, 3))

        order = ssa_of_B(corpus_text, chosen, pset, pset_ssa, index, verify=False)

        assert calls == []
        assert order == naive_ssa(corpus_text, chosen)


class TestSparseSuffixIndex:
    """Tests for the sparse suffix tree."""

    def test_banana_pair(self, banana: Text) -> None:
        """Test the tree over positions 2 and 4."""
        sst = make_sst(banana, [2, 4])
        assert sst.ssa == (4, 2)
        assert sst.lcp == (3,)
        assert sst.to_records() == [(4, 0), (2, 3)]
        assert sst.to_parenthesized() == "((4 2))"
        assert sst.internal_count == 1

    def test_no_shared_prefix(self) -> None:
        """Test leaves hang from the root when suffixes start differently."""
        sst = make_sst(Text.from_string("ab"), [1, 2])
        assert sst.to_parenthesized() == "(1 2)"
        assert sst.node_count == 3

    def test_edge_labels(self, banana: Text) -> None:
        """Test edges are labelled by text ranges."""
        sst = make_sst(banana, [2, 4])
        internal = sst.parent[sst.leaf_position.index(4)]
        assert sst.depth[internal] == 3
        assert sst.edge(internal)[1] == 3
        start, length = sst.edge(sst.leaf_position.index(2))
        assert (start, length) == (5, 3)

    def test_lce_and_rank(self, random_text: Text) -> None:
        """Test LCE between indexed suffixes."""
        chosen = list(range(1, random_text.n + 1, 7))
        sst = make_sst(random_text, chosen)
        for a, b in zip(chosen, reversed(chosen)):
            assert sst.lce(a, b) == naive_lce(random_text, a, b)
        assert sst.rank_of(chosen[0]) >= 0
        assert sst.rank_of(2) == -1

    def test_lce_unindexed(self, banana: Text) -> None:
        """Test unindexed positions are rejected."""
        sst = make_sst(banana, [2, 4])
        with pytest.raises(ContractError) as exc_info:
            sst.lce(2, 3)
        assert "position 3" in str(exc_info.value)

    def test_empty(self, banana: Text) -> None:
        """Test an empty tree."""
        sst = SparseSuffixIndex(banana, [], [])
        assert sst.to_parenthesized() == "()"
        assert len(sst) == 0

    def test_lcp_length_checked(self, banana: Text) -> None:
        """Test the LCP array length must match."""
        with pytest.raises(ContractError):
            SparseSuffixIndex(banana, [4, 2], [])
