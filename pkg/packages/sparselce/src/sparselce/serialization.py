# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Binary index files.

Layout, all little-endian::

    b"SSLCE1" | u32 version | 4-byte tag | u32 header size | JSON header
    | repeated (u64 count | count * i64)

The tag is ``LCEX`` for an LceIndex and ``DCVR`` for a DcIndex. The header is
a pydantic model; the arrays follow in the order the header implies. The
text is embedded, so a loaded index answers queries on its own.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from sparselce.dcover_lce import DcIndex, GapRegion
from sparselce.errors import ContractError, IndexFormatError, InvariantError
from sparselce.lce_index import LceIndex, verify_block_periods
from sparselce.sparse_suffix import SparseSuffixIndex
from sparselce.text import Text
from sparselce.types import PartitioningSet

MAGIC = b"SSLCE1"
FORMAT_VERSION = 1
LCE_TAG = b"LCEX"
DCOVER_TAG = b"DCVR"

_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")

HeaderT = TypeVar("HeaderT", bound=BaseModel)


class LceHeader(BaseModel):
    """Header of an LceIndex file."""

    model_config = ConfigDict(extra="forbid")

    text_digest: str
    pset: PartitioningSet
    levels: int = Field(..., ge=1)


class DcHeader(BaseModel):
    """Header of a DcIndex file."""

    model_config = ConfigDict(extra="forbid")

    text_digest: str
    n: int = Field(..., ge=1)
    tau: int = Field(..., ge=1)
    tau_prime: int = Field(..., ge=1)
    l_star: int = Field(..., ge=1)
    delta: int = Field(..., ge=1)
    regions: list[tuple[int, int, int]] = Field(default_factory=list)


def _pack_array(values: object) -> bytes:
    array = np.ascontiguousarray(values, dtype="<i8")
    return _U64.pack(len(array)) + array.tobytes()


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, size: int) -> bytes:
        if self.offset + size > len(self.data):
            raise IndexFormatError(
                f"Index file truncated at byte {self.offset} (needed {size} more bytes)"
            )
        chunk = self.data[self.offset : self.offset + size]
        self.offset += size
        return chunk

    def u32(self) -> int:
        return int(_U32.unpack(self.take(4))[0])

    def array(self) -> np.ndarray:
        count = int(_U64.unpack(self.take(8))[0])
        return np.frombuffer(self.take(8 * count), dtype="<i8").astype(np.int64)


def _envelope(tag: bytes, header: BaseModel, arrays: list[object]) -> bytes:
    encoded = header.model_dump_json().encode("utf-8")
    parts = [MAGIC, _U32.pack(FORMAT_VERSION), tag, _U32.pack(len(encoded)), encoded]
    parts.extend(_pack_array(a) for a in arrays)
    return b"".join(parts)


def dumps_index(index: LceIndex | DcIndex) -> bytes:
    """Serialize an index to bytes; identical indexes give identical bytes."""
    text_array = np.fromiter(index.text, dtype=np.int64, count=index.text.n)
    if isinstance(index, LceIndex):
        header = LceHeader(
            text_digest=index.text.digest(), pset=index.pset, levels=len(index.table.levels)
        )
        arrays: list[object] = [text_array, index.s_p, index.sa, index.lcp, index.samples]
        arrays.extend(index.table.levels)
        return _envelope(LCE_TAG, header, arrays)
    dc_header = DcHeader(
        text_digest=index.text.digest(),
        n=index.n,
        tau=index.tau,
        tau_prime=index.tau_prime,
        l_star=index.l_star,
        delta=index.delta,
        regions=[(g.start, g.end, g.period) for g in index.regions],
    )
    arrays = [text_array, index.q_positions, index.sst.ssa, index.sst.lcp]
    return _envelope(DCOVER_TAG, dc_header, arrays)


def _parse_header(model: type[HeaderT], raw: bytes) -> HeaderT:
    try:
        return model.model_validate_json(raw)
    except ValidationError as e:
        errors = [
            {
                "loc": list(err["loc"]),
                "msg": err["msg"],
                "type": err["type"],
            }
            for err in e.errors()
        ]
        raise IndexFormatError(
            f"Index header invalid: {len(errors)} error(s)", errors=errors
        ) from e


def _read_text(reader: _Reader, digest: str) -> Text:
    symbols = reader.array()
    try:
        text = Text(int(s) for s in symbols)
    except ValueError as e:
        raise IndexFormatError(f"Embedded text is invalid: {e}") from e
    if text.digest() != digest:
        raise IndexFormatError("Embedded text does not match its recorded digest")
    return text


def _verify_dc(
    text: Text, q_positions: list[int], sst: SparseSuffixIndex, regions: list[GapRegion]
) -> None:
    """Re-check the sample against its stored suffix order and the gap periods."""
    n = text.n
    if any(not 1 <= q <= n for q in q_positions) or q_positions != sorted(set(q_positions)):
        raise IndexFormatError("Sample positions are not strictly increasing within [1..n]")
    if sorted(sst.ssa) != q_positions:
        raise IndexFormatError("Stored suffix order does not cover exactly the sample")
    symbols = text.padded
    for a, b, shared in zip(sst.ssa, sst.ssa[1:], sst.lcp):
        same = symbols[a : a + shared] == symbols[b : b + shared]
        if not same or text[a + shared] >= text[b + shared]:
            raise IndexFormatError(f"Suffixes {a} and {b} are out of order or mislabelled")
    for g in regions:
        if any(symbols[k] != symbols[k - g.period] for k in range(g.start + g.period, g.end + 1)):
            raise IndexFormatError(
                f"Gap [{g.start}..{g.end}] does not have recorded period {g.period}"
            )


def loads_index(data: bytes, verify: bool = False) -> LceIndex | DcIndex:
    """Rebuild an index from bytes produced by :func:`dumps_index`.

    With ``verify`` the recorded block and gap periods are re-checked against
    the embedded text, and a difference-cover sample against its stored order.

    Raises:
        IndexFormatError: On a bad magic, unknown version or tag, malformed
            header or truncated body, or a failed verification.
    """
    reader = _Reader(data)
    if reader.take(len(MAGIC)) != MAGIC:
        raise IndexFormatError("Not an index file (bad magic)")
    version = reader.u32()
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"Unsupported index format version {version}")
    tag = reader.take(4)
    raw_header = reader.take(reader.u32())

    if tag == LCE_TAG:
        header = _parse_header(LceHeader, raw_header)
        text = _read_text(reader, header.text_digest)
        s_p, sa, lcp, samples = (reader.array() for _ in range(4))
        levels = [reader.array() for _ in range(header.levels)]
        if verify:
            try:
                verify_block_periods(text, header.pset)
            except InvariantError as e:
                raise IndexFormatError(f"Recorded block periods do not hold: {e}") from e
        try:
            return LceIndex(text, header.pset, s_p, sa, lcp, levels=levels, samples=samples)
        except (ValueError, IndexError, ContractError) as e:
            raise IndexFormatError(f"Index tables are inconsistent: {e}") from e

    if tag == DCOVER_TAG:
        dc = _parse_header(DcHeader, raw_header)
        text = _read_text(reader, dc.text_digest)
        q_positions, ssa, lcp = (reader.array() for _ in range(3))
        try:
            sst = SparseSuffixIndex(text, ssa.tolist(), lcp.tolist())
        except (ValueError, IndexError, ContractError) as e:
            raise IndexFormatError(f"Sparse suffix tables are inconsistent: {e}") from e
        regions = [GapRegion(start=s, end=e, period=p) for s, e, p in dc.regions]
        if verify:
            _verify_dc(text, q_positions.tolist(), sst, regions)
        return DcIndex(
            text, dc.tau, dc.tau_prime, dc.l_star, dc.delta, q_positions.tolist(), regions, sst
        )

    raise IndexFormatError(f"Unknown index section tag {tag!r}")


def dump_index(index: LceIndex | DcIndex, path: str | Path) -> None:
    """Write an index file."""
    Path(path).write_bytes(dumps_index(index))


def load_index(path: str | Path, verify: bool = False) -> LceIndex | DcIndex:
    """Read an index file, optionally re-checking it as :func:`loads_index` does.

    Raises:
        IndexFormatError: If the file content is not a valid index.
        OSError: If the file cannot be read.
    """
    return loads_index(Path(path).read_bytes(), verify)
