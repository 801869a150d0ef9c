# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Read-only integer-alphabet text with virtual sentinel padding."""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Iterator

import numpy as np

from sparselce.errors import ParameterError, PositionRangeError

SENTINEL = 0
MAX_SYMBOL = (1 << 61) - 1


class Text:
    """An immutable text S[1..n] over positive integer symbols.

    Positions are 1-based. Reads outside [1..n] return the sentinel 0, which is
    smaller than every real symbol, so two distinct suffixes always mismatch.
    """

    __slots__ = ("_symbols", "_n")

    def __init__(self, symbols: Iterable[int]):
        values = tuple(int(s) for s in symbols)
        for offset, value in enumerate(values):
            if value <= SENTINEL or value >= MAX_SYMBOL:
                raise ParameterError(
                    "symbols", f"symbol {value} at position {offset + 1} outside [1, 2^61)"
                )
        # Slot 0 holds the sentinel so position k maps directly to index k.
        self._symbols: tuple[int, ...] = (SENTINEL, *values)
        self._n = len(values)

    @classmethod
    def from_bytes(cls, data: bytes) -> Text:
        """Encode raw bytes, mapping byte b to symbol b + 1."""
        return cls(b + 1 for b in data)

    @classmethod
    def from_string(cls, value: str) -> Text:
        """Encode a string through its UTF-8 bytes."""
        return cls.from_bytes(value.encode("utf-8"))

    @property
    def n(self) -> int:
        return self._n

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, position: int) -> int:
        if 1 <= position <= self._n:
            return self._symbols[position]
        return SENTINEL

    def __iter__(self) -> Iterator[int]:
        return iter(self._symbols[1:])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Text):
            return NotImplemented
        return self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        return f"Text(n={self._n})"

    @property
    def padded(self) -> tuple[int, ...]:
        """Symbols with the leading sentinel slot, indexable by 1-based position."""
        return self._symbols

    def substring(self, start: int, length: int) -> tuple[int, ...]:
        """Return S[start..start+length-1], reading sentinels past either end."""
        if length <= 0:
            return ()
        if start >= 1 and start + length - 1 <= self._n:
            return self._symbols[start : start + length]
        return tuple(self[k] for k in range(start, start + length))

    def check_position(self, position: int) -> None:
        """Raise PositionRangeError unless 1 <= position <= n."""
        if not 1 <= position <= self._n:
            raise PositionRangeError(position, self._n)

    def to_array(self) -> np.ndarray:
        """Return the symbols S[1..n] as a read-only int64 array."""
        array = np.asarray(self._symbols[1:], dtype=np.int64)
        array.setflags(write=False)
        return array

    def to_bytes(self) -> bytes:
        """Invert from_bytes; raises ParameterError for symbols above 256."""
        if any(s > 256 for s in self._symbols[1:]):
            raise ParameterError("symbols", "text holds symbols outside the byte range")
        return bytes(s - 1 for s in self._symbols[1:])

    def digest(self) -> str:
        """Return a stable blake2b digest of the symbol stream."""
        data = np.asarray(self._symbols[1:], dtype="<i8").tobytes()
        return hashlib.blake2b(data, digest_size=16).hexdigest()
