# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Tests for the deterministic hierarchical decomposition."""

import itertools

import pytest
from sparselce import ContractError, ParameterError, Text, build_det, generate, iter_det_positions
from sparselce.oracle import check_pset
from sparselce.partition_det import (
    DetStats,
    alphabet_reduce_step,
    classify,
    det_delta,
    det_levels,
    label_rounds,
    log_star,
    next_level,
    reduce_to_six,
)
from sparselce.periodicity import principal_period


def level_zero(text: Text) -> list[tuple[int, int]]:
    """Helper to create the one-character blocks of a text."""
    return [(i, i) for i in range(1, text.n + 1)]


class TestCounting:
    """Tests for log_star, label_rounds and det_levels."""

    def test_log_star(self) -> None:
        """Test iterated logarithm values."""
        assert [log_star(x) for x in (1, 2, 4, 16, 65536, 10**4)] == [1, 1, 2, 3, 4, 4]

    def test_label_rounds(self) -> None:
        """Test rounds needed to bring labels below 6."""
        assert label_rounds(61) == 4
        assert label_rounds(2) == 0
        assert label_rounds(3) == 1

    def test_det_levels(self) -> None:
        """Test the top level for several tau."""
        assert det_levels(17) == 0
        assert det_levels(18) == 1
        assert det_levels(30) == 2
        assert det_levels(64) == 4


class TestAlphabetReduction:
    """Tests for deterministic coin tossing."""

    def test_step_examples(self) -> None:
        """Test the lowest differing bit and its value."""
        assert alphabet_reduce_step(5, 7) == 2
        assert alphabet_reduce_step(0, 1) == 0
        assert alphabet_reduce_step(4, 0) == 5

    def test_step_rejects_equal_labels(self) -> None:
        """Test equal neighbours cannot be reduced."""
        with pytest.raises(ContractError):
            alphabet_reduce_step(3, 3)

    def test_step_keeps_neighbours_distinct(self) -> None:
        """Test consecutive reductions never collide."""
        for a, b, c in itertools.product(range(16), repeat=3):
            if a != b and b != c:
                assert alphabet_reduce_step(a, b) != alphabet_reduce_step(b, c)

    def test_reduce_to_six(self) -> None:
        """Test labels end below 6 with distinct neighbours."""
        labels = reduce_to_six(list(range(40)))
        assert len(labels) == 40
        assert max(labels) < 6
        assert all(a != b for a, b in zip(labels, labels[1:]))

    def test_reduce_to_six_short_inputs(self) -> None:
        """Test trivial and already-small sequences."""
        assert reduce_to_six([]) == []
        assert reduce_to_six([9]) == [0]
        assert reduce_to_six([1, 4, 2]) == [1, 4, 2]

    def test_reduce_to_six_rejects_repeats(self) -> None:
        """Test equal neighbours are a contract violation."""
        with pytest.raises(ContractError):
            reduce_to_six([1, 7, 7, 2])


class TestClassify:
    """Tests for classify."""

    def test_identical_run(self) -> None:
        """Test identical short sub-blocks form one type-2 sequence."""
        text = Text.from_string("aaaa")
        sequences = classify(text, level_zero(text), 1, 4)
        assert [s.kind for s in sequences] == [2]
        assert len(sequences[0].blocks) == 4

    def test_long_and_short_other_sequences(self) -> None:
        """Test the rounds threshold separates types 3 and 4."""
        text = Text.from_string("abcde")
        assert [s.kind for s in classify(text, level_zero(text), 1, 10)] == [4]
        assert [s.kind for s in classify(text, level_zero(text), 1, 3)] == [3]

    def test_large_block_splits_sequences(self) -> None:
        """Test a long sub-block stands alone as type 1."""
        text = Text.from_string("abcde")
        sequences = classify(text, [(1, 1), (2, 4), (5, 5)], 1, 5)
        assert [s.kind for s in sequences] == [4, 1, 4]


class TestNextLevel:
    """Tests for next_level."""

    def test_pairs_from_the_right(self) -> None:
        """Test short sequences merge in pairs with a leading triple."""
        text = Text.from_string("abcde")
        assert next_level(text, level_zero(text), 1, 10) == [(1, 3), (4, 5)]
        text = Text.from_string("abcd")
        assert next_level(text, level_zero(text), 1, 10) == [(1, 2), (3, 4)]

    def test_repeat_becomes_one_block(self) -> None:
        """Test identical neighbours merge."""
        text = Text.from_string("aaaa")
        assert next_level(text, level_zero(text), 1, 10) == [(1, 4)]

    def test_empty(self) -> None:
        """Test no sub-blocks give no blocks."""
        assert next_level(Text.from_string("ab"), [], 1, 4) == []

    def test_coin_tossing_block_sizes(self) -> None:
        """Test cuts at label minima give blocks of 2 to 12 sub-blocks."""
        text = Text([(5 * k) % 31 + 1 for k in range(200)])
        blocks = next_level(text, level_zero(text), 1, 4)
        assert blocks[0][0] == 1
        assert blocks[-1][1] == 200
        assert all(b[0] == a[1] + 1 for a, b in zip(blocks, blocks[1:]))
        assert all(2 <= end - start + 1 <= 12 for start, end in blocks)


class TestBuildDet:
    """Tests for build_det and iter_det_positions."""

    def test_constant_text(self) -> None:
        """Test a constant text collapses to one periodic block."""
        pset = build_det(Text.from_string("a" * 100), 18)
        assert pset.positions == (1,)
        assert pset.block_periods == {1: 1}

    def test_small_tau_selects_everything(self) -> None:
        """Test tau below 18 keeps every position with delta 1."""
        text = Text.from_string("abracadabra")
        pset = build_det(text, 5)
        assert pset.positions == tuple(range(1, 12))
        assert pset.delta == 1
        assert det_delta(text, 5) == 1

    @pytest.mark.parametrize("tau", [4, 18, 30])
    def test_valid_partitioning_set(self, corpus_text: Text, tau: int) -> None:
        """Test the brute-force checks pass on every corpus family."""
        pset = build_det(corpus_text, tau)
        assert pset.method == "det"
        report = check_pset(corpus_text, pset)
        assert report.is_valid, report.errors

    def test_streaming_matches_build(self) -> None:
        """Test the lazy stream yields the built positions with bounded state."""
        text = Text.from_bytes(generate("random", 2000, sigma=4, seed=17))
        stats = DetStats()
        pset = build_det(text, 64, stats=stats)
        assert stats.levels == 4
        assert len(stats.rounds) == 4
        assert stats.peak_aux_words < text.n // 4
        assert list(iter_det_positions(text, 64)) == list(pset.positions)

    def test_tau_out_of_range(self) -> None:
        """Test tau must lie in [1, n]."""
        with pytest.raises(ParameterError):
            list(iter_det_positions(Text.from_string("abc"), 4))


class TestLevelProperties:
    """Tests for the structure of the level sets on every corpus family."""

    @pytest.mark.parametrize("tau", [60, 200])
    def test_levels_nest_and_shrink(self, corpus_text: Text, tau: int) -> None:
        """Test each level is a subset of the one below and holds at most 2n/(3/2)^mu starts."""
        n = corpus_text.n
        stats = DetStats()
        pset = build_det(corpus_text, tau, stats=stats)
        assert stats.levels == len(stats.rounds) > 0
        blocks = level_zero(corpus_text)
        below = set(range(1, n + 1))
        for mu, rounds in enumerate(stats.rounds, start=1):
            blocks = next_level(corpus_text, blocks, mu, rounds)
            starts = {start for start, _ in blocks}
            assert starts <= below
            assert len(starts) <= 2 * n / 1.5**mu
            below = starts
        assert sorted(below) == list(pset.positions)

    @pytest.mark.parametrize("tau", [60, 200])
    def test_long_level_blocks_are_periodic(self, corpus_text: Text, tau: int) -> None:
        """Test a level-mu block longer than 12 (3/2)^mu has period at most (3/2)^mu."""
        stats = DetStats()
        build_det(corpus_text, tau, stats=stats)
        symbols = corpus_text.padded
        blocks = level_zero(corpus_text)
        for mu, rounds in enumerate(stats.rounds, start=1):
            blocks = next_level(corpus_text, blocks, mu, rounds)
            for start, end in blocks:
                if end - start + 1 > 12 * 1.5**mu:
                    assert principal_period(symbols[start : end + 1]) <= 1.5**mu

    @pytest.mark.parametrize("tau", [18, 60, 200])
    def test_blocks_longer_than_tau_are_periodic(self, corpus_text: Text, tau: int) -> None:
        """Test every top-level block longer than tau has period at most tau/4."""
        pset = build_det(corpus_text, tau)
        symbols = corpus_text.padded
        ends = [*pset.positions[1:], corpus_text.n + 1]
        for start, stop in zip(pset.positions, ends):
            if stop - start > tau:
                assert principal_period(symbols[start:stop]) <= tau / 4
