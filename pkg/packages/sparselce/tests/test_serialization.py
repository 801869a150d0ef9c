# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Tests for index files."""

import struct
from pathlib import Path

import pytest
from sparselce import (
    DcIndex,
    IndexFormatError,
    LceIndex,
    PartitioningSet,
    SparseSuffixIndex,
    Text,
    build_dc,
    build_lce,
    build_rand,
    dump_index,
    dumps_index,
    load_index,
    loads_index,
)
from sparselce.dcover_lce import GapRegion
from sparselce.serialization import LCE_TAG, MAGIC, DcHeader, _envelope


def make_lce_index(text: Text) -> LceIndex:
    """Helper to create a randomized-set LCE index."""
    return build_lce(text, build_rand(text, 6, seed=3))


def header_end(data: bytes) -> int:
    """Helper to find the first byte after the JSON header."""
    (size,) = struct.unpack_from("<I", data, len(MAGIC) + 8)
    return len(MAGIC) + 12 + size


class TestRoundTrip:
    """Tests for dumping and loading indexes."""

    def test_lce_index(self, fibonacci_text: Text) -> None:
        """Test a reloaded LceIndex answers identically."""
        index = make_lce_index(fibonacci_text)
        loaded = loads_index(dumps_index(index))
        assert isinstance(loaded, LceIndex)
        assert loaded.pset == index.pset
        for i, j in [(1, 9), (4, 12), (30, 151), (2, 300)]:
            assert loaded.query(i, j) == index.query(i, j)

    def test_dc_index(self, fibonacci_text: Text) -> None:
        """Test a reloaded DcIndex answers identically."""
        index = build_dc(fibonacci_text, 8)
        loaded = loads_index(dumps_index(index))
        assert isinstance(loaded, DcIndex)
        assert loaded.q_positions.tolist() == index.q_positions.tolist()
        for i, j in [(1, 9), (4, 12), (30, 151), (2, 300)]:
            assert loaded.lce(i, j) == index.lce(i, j)

    def test_bytes_are_stable(self, random_text: Text) -> None:
        """Test identical indexes serialize to identical bytes."""
        for index in (make_lce_index(random_text), build_dc(random_text, 8)):
            data = dumps_index(index)
            assert dumps_index(loads_index(data)) == data

    def test_files(self, random_text: Text, tmp_path: Path) -> None:
        """Test dump_index and load_index through the filesystem."""
        path = tmp_path / "text.idx"
        index = make_lce_index(random_text)
        dump_index(index, path)
        loaded = load_index(path)
        assert isinstance(loaded, LceIndex)
        assert loaded.state_digest() == index.state_digest()


class TestCorruptFiles:
    """Tests for rejected index files."""

    def test_bad_magic(self, random_text: Text) -> None:
        """Test the magic bytes are checked."""
        data = dumps_index(make_lce_index(random_text))
        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(b"NOTIDX" + data[len(MAGIC) :])
        assert "bad magic" in str(exc_info.value)

    def test_unsupported_version(self, random_text: Text) -> None:
        """Test other format versions are refused."""
        data = bytearray(dumps_index(make_lce_index(random_text)))
        struct.pack_into("<I", data, len(MAGIC), 2)
        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(bytes(data))
        assert "version 2" in str(exc_info.value)

    def test_unknown_tag(self, random_text: Text) -> None:
        """Test unknown section tags are refused."""
        data = bytearray(dumps_index(make_lce_index(random_text)))
        data[len(MAGIC) + 4 : len(MAGIC) + 8] = b"ZZZZ"
        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(bytes(data))
        assert "Unknown index section tag" in str(exc_info.value)

    def test_truncated(self, random_text: Text) -> None:
        """Test a cut file is detected."""
        data = dumps_index(make_lce_index(random_text))
        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(data[:-5])
        assert "truncated" in str(exc_info.value)

    def test_empty(self) -> None:
        """Test an empty file is detected."""
        with pytest.raises(IndexFormatError):
            loads_index(b"")

    def test_header_mismatch(self) -> None:
        """Test a header that does not fit its tag is reported field by field."""
        header = DcHeader(text_digest="x", n=3, tau=1, tau_prime=1, l_star=1, delta=1)
        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(_envelope(LCE_TAG, header, []))
        assert "Index header invalid" in str(exc_info.value)
        assert exc_info.value.errors

    def test_text_digest_checked(self, random_text: Text) -> None:
        """Test a modified embedded text is detected."""
        data = bytearray(dumps_index(make_lce_index(random_text)))
        first_symbol = header_end(bytes(data)) + 8
        struct.pack_into("<q", data, first_symbol, 200)
        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(bytes(data))
        assert "digest" in str(exc_info.value)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test a missing file raises OSError."""
        with pytest.raises(OSError):
            load_index(tmp_path / "absent.idx")


class TestVerifiedLoad:
    """Tests for re-checking an index while loading it."""

    def test_sound_indexes_pass(self, fibonacci_text: Text) -> None:
        """Test verification accepts what the builders produce."""
        for index in (make_lce_index(fibonacci_text), build_dc(fibonacci_text, 24)):
            loaded = loads_index(dumps_index(index), verify=True)
            assert dumps_index(loaded) == dumps_index(index)

    def test_tampered_block_period(self) -> None:
        """Test a recorded period that does not hold is caught only when verifying."""
        text = Text.from_string("ab" * 30 + "c")
        pset = PartitioningSet(n=61, tau=4, delta=1, positions=(61,), block_periods={1: 2})
        index = build_lce(text, pset)
        tampered = LceIndex(
            text,
            pset.model_copy(update={"block_periods": {1: 3}}),
            index.s_p,
            index.sa,
            index.lcp,
            levels=index.table.levels,
            samples=index.samples,
        )
        data = dumps_index(tampered)

        assert isinstance(loads_index(data), LceIndex)
        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(data, verify=True)
        assert "block periods" in str(exc_info.value)

    def test_sample_out_of_order(self, random_text: Text) -> None:
        """Test a stored suffix order that disagrees with the text is caught."""
        index = build_dc(random_text, 12)
        ssa = list(index.sst.ssa)
        ssa[0], ssa[1] = ssa[1], ssa[0]
        swapped = SparseSuffixIndex(random_text, ssa, index.sst.lcp)
        tampered = DcIndex(
            random_text,
            index.tau,
            index.tau_prime,
            index.l_star,
            index.delta,
            index.q_positions.tolist(),
            index.regions,
            swapped,
        )

        with pytest.raises(IndexFormatError) as exc_info:
            loads_index(dumps_index(tampered), verify=True)
        assert "out of order" in str(exc_info.value)

    def test_wrong_gap_period(self, random_text: Text, tmp_path: Path) -> None:
        """Test a gap region whose period does not hold is caught."""
        index = build_dc(random_text, 12)
        tampered = DcIndex(
            random_text,
            index.tau,
            index.tau_prime,
            index.l_star,
            index.delta,
            index.q_positions.tolist(),
            [GapRegion(start=2, end=60, period=1)],
            index.sst,
        )
        path = tmp_path / "gap.sslce"
        dump_index(tampered, path)

        assert isinstance(load_index(path), DcIndex)
        with pytest.raises(IndexFormatError) as exc_info:
            load_index(path, verify=True)
        assert "period 1" in str(exc_info.value)
