# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Pydantic models for index construction settings."""

from __future__ import annotations

import math
from typing import Any, Literal, get_args

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from sparselce.errors import ConfigError

Mode = Literal["rand", "rand-whp", "det", "dcover"]
MODES: tuple[str, ...] = get_args(Mode)

MAX_SAMPLES = 10**6


class SelectionConfig(BaseModel):
    """Settings for randomized selection."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    minwise_degree: int = Field(default=8, ge=2, description="Degree k of the min-wise family")
    fingerprint_exponent: int = Field(
        default=3, ge=3, description="Modulus must exceed n to this power"
    )
    abandon_factor: float = Field(
        default=8.0, gt=1, description="c', the size bound multiplier for whp modes"
    )
    base_width: int | None = Field(
        default=None, ge=2, description="Width of the coarse set used by the large-tau path"
    )
    sample_count: int | None = Field(default=None, ge=1, description="Intervals sampled")
    retries: int | None = Field(default=None, ge=1, description="Hash functions tried")
    trials: int | None = Field(default=None, ge=1, description="Functions raced per pass")

    def resolved_base_width(self, n: int) -> int:
        if self.base_width is not None:
            return self.base_width
        return max(_ceil_log2(n), 4)

    def resolved_sample_count(self, n: int, intervals: int) -> int:
        if self.sample_count is not None:
            return self.sample_count
        return max(1, min(intervals, _ceil_log2(n) ** 5, MAX_SAMPLES))

    def resolved_retries(self, n: int) -> int:
        if self.retries is not None:
            return self.retries
        return max(1, 2 * _ceil_log2(n))

    def resolved_trials(self, n: int) -> int:
        if self.trials is not None:
            return self.trials
        return max(1, _ceil_log2(n))


class DecompositionConfig(BaseModel):
    """Settings for the deterministic hierarchical decomposition."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    log_star_multiplier: int = Field(
        default=4, ge=1, description="c, label rounds are at least c * log*(n)"
    )


class IndexConfig(BaseModel):
    """Everything needed to reproduce an index build."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    tau: int = Field(..., ge=1)
    mode: Mode = "rand"
    seed: int = Field(default=0, ge=0, lt=2**64)
    selection: SelectionConfig = Field(default_factory=SelectionConfig)
    decomposition: DecompositionConfig = Field(default_factory=DecompositionConfig)


def make_config(**values: Any) -> IndexConfig:
    """Validate keyword settings into an IndexConfig.

    Raises:
        ConfigError: If any value fails validation.
    """
    try:
        return IndexConfig.model_validate(values)
    except ValidationError as e:
        errors = [
            {
                "loc": list(err["loc"]),
                "msg": err["msg"],
                "type": err["type"],
            }
            for err in e.errors()
        ]
        raise ConfigError(
            f"Index configuration invalid: {len(errors)} error(s)", errors=errors
        ) from e


def _ceil_log2(n: int) -> int:
    return max(1, math.ceil(math.log2(max(n, 2))))
