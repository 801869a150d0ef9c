# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Seeded text generators for tests, verification and benchmarks."""

from __future__ import annotations

import math
from typing import Literal, get_args

import numpy as np

from sparselce.errors import ParameterError

CorpusKind = Literal["random", "periodic", "fibonacci", "thue-morse"]

CORPUS_KINDS: tuple[str, ...] = get_args(CorpusKind)

LETTERS = b"abcdefghijklmnopqrstuvwxyz"


def _random_letters(rng: np.random.Generator, n: int, sigma: int) -> bytes:
    picks = rng.integers(0, sigma, size=n)
    return bytes(LETTERS[int(k)] for k in picks)


def _is_primitive(word: bytes) -> bool:
    # A word is primitive iff it occurs in its square only at offsets 0 and len.
    return (word + word).find(word, 1) == len(word)


def _periodic(rng: np.random.Generator, n: int, sigma: int) -> bytes:
    width = math.isqrt(n - 1) + 1
    word = _random_letters(rng, width, sigma)
    if sigma > 1:
        while not _is_primitive(word):
            word = _random_letters(rng, width, sigma)
    repeats = -(-n // width)
    return (word * repeats)[:n]


def _fibonacci(n: int) -> bytes:
    previous, current = b"a", b"ab"
    while len(current) < n:
        previous, current = current, current + previous
    return current[:n]


def _thue_morse(n: int) -> bytes:
    return bytes(b"ab"[k.bit_count() & 1] for k in range(n))


def generate(kind: str, n: int, sigma: int = 2, seed: int = 0) -> bytes:
    """Generate a text of length n.

    Args:
        kind: One of "random", "periodic", "fibonacci" or "thue-morse".
        n: Text length.
        sigma: Alphabet size for the random kinds, taken from the first letters.
        seed: Seed of the numpy generator.

    Raises:
        ParameterError: If n < 1, sigma is outside [1, 26], seed is negative or the
            kind is unknown.
    """
    if seed < 0:
        raise ParameterError("seed", f"must be non-negative, got {seed}")
    if n < 1:
        raise ParameterError("n", f"must be at least 1, got {n}")
    if not 1 <= sigma <= len(LETTERS):
        raise ParameterError("sigma", f"must lie in [1, {len(LETTERS)}], got {sigma}")
    rng = np.random.default_rng(seed)
    if kind == "random":
        return _random_letters(rng, n, sigma)
    if kind == "periodic":
        return _periodic(rng, n, sigma)
    if kind == "fibonacci":
        return _fibonacci(n)
    if kind == "thue-morse":
        return _thue_morse(n)
    raise ParameterError("kind", f"unknown corpus kind '{kind}', expected one of {CORPUS_KINDS}")
