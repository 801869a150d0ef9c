# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Shared fixtures for sparselce tests."""

import pytest
from sparselce import Text, generate


@pytest.fixture
def banana() -> Text:
    """The text "banana"."""
    return Text.from_string("banana")


@pytest.fixture
def fibonacci_text() -> Text:
    """A Fibonacci word prefix of length 300."""
    return Text.from_bytes(generate("fibonacci", 300))


@pytest.fixture
def random_text() -> Text:
    """A random binary text of length 300."""
    return Text.from_bytes(generate("random", 300, sigma=2, seed=11))


@pytest.fixture(
    params=[
        ("random", 2),
        ("random", 4),
        ("periodic", 3),
        ("fibonacci", 2),
        ("thue-morse", 2),
    ],
    ids=lambda p: f"{p[0]}-{p[1]}",
)
def corpus_text(request: pytest.FixtureRequest) -> Text:
    """One text of each corpus family, length 400."""
    kind, sigma = request.param
    return Text.from_bytes(generate(kind, 400, sigma=sigma, seed=3))
