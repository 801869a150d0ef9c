# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Karp-Rabin fingerprints and a polynomial min-wise hash family."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from sparselce.errors import ParameterError, PositionRangeError
from sparselce.text import Text

MERSENNE_61 = (1 << 61) - 1

EMPTY_FINGERPRINT = 0


@dataclass(frozen=True)
class Fingerprinter:
    """Polynomial fingerprint phi(s) = sum s[k] * base^(len-1-k) mod modulus.

    The first symbol is the most significant digit. The power table covers
    exponents up to ``max_length``; larger exponents fall back to ``pow``.
    """

    base: int
    modulus: int = MERSENNE_61
    max_length: int = 0
    power_table: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ParameterError("modulus", "must be at least 2")
        if not 1 <= self.base < self.modulus:
            raise ParameterError("base", f"must lie in [1, {self.modulus - 1}]")
        powers = [1] * (self.max_length + 1)
        for k in range(1, self.max_length + 1):
            powers[k] = powers[k - 1] * self.base % self.modulus
        object.__setattr__(self, "power_table", tuple(powers))

    @classmethod
    def create(
        cls,
        n: int,
        rng: np.random.Generator,
        exponent: int = 3,
        modulus: int = MERSENNE_61,
    ) -> Fingerprinter:
        """Draw a random base for texts of length n.

        Raises:
            ParameterError: If the modulus does not exceed n ** exponent.
        """
        if modulus <= max(n, 1) ** exponent:
            raise ParameterError(
                "fingerprint_exponent",
                f"modulus {modulus} does not exceed n^{exponent} for n={n}",
            )
        base = int(rng.integers(1, modulus))
        return cls(base=base, modulus=modulus, max_length=n)

    def power(self, k: int) -> int:
        """Return base^k mod modulus."""
        if k < len(self.power_table):
            return self.power_table[k]
        return pow(self.base, k, self.modulus)

    def window(self, text: Text, i: int, length: int) -> int:
        """Fingerprint of S[i..i+length-1], computed from scratch.

        Raises:
            PositionRangeError: If the window leaves [1..n].
        """
        if length < 0:
            raise ParameterError("length", "must be non-negative")
        if i < 1 or i + length - 1 > text.n:
            raise PositionRangeError(i if i < 1 else i + length - 1, text.n)
        value = EMPTY_FINGERPRINT
        symbols = text.padded
        base, modulus = self.base, self.modulus
        for k in range(i, i + length):
            value = (value * base + symbols[k]) % modulus
        return value

    def slide(self, previous: int, outgoing: int, incoming: int, length: int) -> int:
        """Shift a window fingerprint one position to the right in O(1)."""
        shifted = previous - outgoing * self.power(length - 1)
        return (shifted * self.base + incoming) % self.modulus

    def iter_windows(self, text: Text, length: int, start: int, stop: int) -> Iterator[int]:
        """Yield fingerprints of the windows starting at start..stop (inclusive)."""
        if stop < start:
            return
        value = self.window(text, start, length)
        yield value
        symbols = text.padded
        for j in range(start + 1, stop + 1):
            value = self.slide(value, symbols[j - 1], symbols[j + length - 1], length)
            yield value


@dataclass(frozen=True)
class MinwiseHasher:
    """Polynomial h(x) = sum c_k x^(d-k) over GF(q), highest degree first."""

    coefficients: tuple[int, ...]
    q: int = MERSENNE_61

    def __post_init__(self) -> None:
        if len(self.coefficients) < 2:
            raise ParameterError("coefficients", "need at least 2 (k-wise degree k >= 2)")
        if any(not 0 <= c < self.q for c in self.coefficients):
            raise ParameterError("coefficients", f"must lie in [0, {self.q})")

    @classmethod
    def random(
        cls, rng: np.random.Generator, degree: int = 8, q: int = MERSENNE_61
    ) -> MinwiseHasher:
        """Draw a uniformly random polynomial with ``degree`` coefficients."""
        values = rng.integers(0, q, size=degree, dtype=np.int64)
        return cls(coefficients=tuple(int(v) for v in values), q=q)

    def __call__(self, x: int) -> int:
        # Fingerprints at or above q are folded; only minima matter downstream.
        x %= self.q
        value = 0
        for c in self.coefficients:
            value = (value * x + c) % self.q
        return value
