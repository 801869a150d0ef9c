# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Exceptions raised by the sparselce library."""

from __future__ import annotations


class SparseLceError(Exception):
    """Base class for all sparselce errors."""


class ParameterError(SparseLceError, ValueError):
    """Error raised when a construction or query parameter is out of its domain."""

    def __init__(self, name: str, message: str):
        super().__init__(f"Parameter '{name}': {message}")
        self.name = name


class PositionRangeError(SparseLceError, IndexError):
    """Error raised when a text position lies outside [1..n]."""

    def __init__(self, position: int, n: int):
        super().__init__(f"Position {position} outside [1..{n}]")
        self.position = position
        self.n = n


class ContractError(SparseLceError):
    """Error raised when a caller breaks an operation's precondition."""


class InvariantError(SparseLceError):
    """Error raised when an input structure is malformed."""


class IndexFormatError(SparseLceError):
    """Error raised when a serialized index cannot be read."""

    def __init__(self, message: str, errors: list[dict] | None = None):
        super().__init__(message)
        self.errors = errors or []


class ConfigError(SparseLceError):
    """Error raised when an index configuration fails validation."""

    def __init__(self, message: str, errors: list[dict] | None = None):
        super().__init__(message)
        self.errors = errors or []
