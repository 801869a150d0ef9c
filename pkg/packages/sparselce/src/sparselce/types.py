# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Pydantic models for runs, segments and partitioning sets."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Run(BaseModel):
    """A maximal periodic substring S[start..end] with principal period ``period``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    start: int = Field(..., ge=1)
    end: int = Field(..., ge=1)
    period: int = Field(..., ge=1)

    @model_validator(mode="after")
    def _check_span(self) -> Run:
        if self.end < self.start:
            raise ValueError("run end precedes its start")
        return self

    @property
    def length(self) -> int:
        return self.end - self.start + 1


class Segment(BaseModel):
    """One piece of a runs-partitioning: a run segment or a plain segment."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    start: int = Field(..., ge=1)
    end: int = Field(..., ge=1)
    kind: Literal["run", "plain"]
    period: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_kind(self) -> Segment:
        if self.end < self.start:
            raise ValueError("segment end precedes its start")
        if (self.kind == "run") != (self.period is not None):
            raise ValueError("run segments carry a period, plain segments do not")
        return self

    @property
    def length(self) -> int:
        return self.end - self.start + 1


class SegmentList(BaseModel):
    """Disjoint consecutive segments covering [1..n]."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(..., ge=0)
    segments: tuple[Segment, ...] = ()

    @model_validator(mode="after")
    def _check_cover(self) -> SegmentList:
        expected = 1
        previous_kind: str | None = None
        for segment in self.segments:
            if segment.start != expected:
                raise ValueError(f"segment starting at {segment.start} leaves a gap or overlap")
            if segment.kind == "plain" and previous_kind == "plain":
                raise ValueError("adjacent plain segments")
            expected = segment.end + 1
            previous_kind = segment.kind
        if expected != self.n + 1:
            raise ValueError(f"segments end at {expected - 1}, text has n={self.n}")
        return self

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):  # type: ignore[override]
        return iter(self.segments)

    def __getitem__(self, index: int) -> Segment:
        return self.segments[index]


class PartitioningSet(BaseModel):
    """Selected positions P of a text with per-block periodicity annotations.

    ``tau`` is the compactness bound the set guarantees and ``delta`` its
    local-consistency radius. Blocks are the maximal intervals between
    consecutive boundaries in ``positions`` together with 1 and n + 1.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(..., ge=1)
    tau: int = Field(..., ge=1)
    delta: int = Field(..., ge=1)
    positions: tuple[int, ...]
    block_periods: dict[int, int] = Field(default_factory=dict)
    forward_sync: bool = True
    method: Literal["rand", "rand-whp", "det"] = "rand"

    @model_validator(mode="after")
    def _check_positions(self) -> PartitioningSet:
        previous = 0
        for p in self.positions:
            if p <= previous or p > self.n:
                raise ValueError(f"position {p} breaks strict order within [1..{self.n}]")
            previous = p
        starts = set(self.positions) | {1}
        for start, period in self.block_periods.items():
            if start not in starts:
                raise ValueError(f"period recorded for non-block-start {start}")
            if period < 1:
                raise ValueError(f"period {period} at block {start} is not positive")
        return self

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, position: object) -> bool:
        if not isinstance(position, int):
            return False
        k = bisect_left(self.positions, position)
        return k < len(self.positions) and self.positions[k] == position

    @property
    def boundaries(self) -> tuple[int, ...]:
        """Block starts: 1 followed by every selected position above 1."""
        if self.positions and self.positions[0] == 1:
            return self.positions
        return (1, *self.positions)

    def blocks(self) -> list[tuple[int, int]]:
        """Return (start, end) for every block, left to right."""
        starts = self.boundaries
        ends = [*starts[1:], self.n + 1]
        return [(s, e - 1) for s, e in zip(starts, ends)]

    def successor(self, position: int) -> int:
        """Return min{p in P : p >= position}, or n + 1."""
        k = bisect_left(self.positions, position)
        return self.positions[k] if k < len(self.positions) else self.n + 1

    def predecessor(self, position: int) -> int:
        """Return the start of the block containing ``position``."""
        k = bisect_right(self.positions, position)
        return self.positions[k - 1] if k > 0 else 1
