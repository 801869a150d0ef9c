# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Shared fixtures for sparselce-cli tests."""

import logging
from collections.abc import Iterator
from pathlib import Path

import pytest
from sparselce import Text, generate
from sparselce_cli import main


@pytest.fixture(autouse=True)
def reset_logging() -> Iterator[None]:
    """Drop the handlers main() installs so they do not outlive the captured streams."""
    yield
    for name in ("sparselce", "sparselce_cli"):
        logger = logging.getLogger(name)
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
        logger.setLevel(logging.NOTSET)


@pytest.fixture
def gen_args() -> list[str]:
    """Flags generating a random binary text of length 300."""
    return ["--gen", "random", "--n", "300", "--sigma", "2", "--seed", "5"]


@pytest.fixture
def generated_text() -> Text:
    """The text produced by gen_args."""
    return Text.from_bytes(generate("random", 300, sigma=2, seed=5))


@pytest.fixture
def index_file(
    tmp_path: Path, gen_args: list[str], capsys: pytest.CaptureFixture[str]
) -> Path:
    """A det index with tau=8 built over gen_args."""
    out = tmp_path / "random.sslce"
    assert main(["build", *gen_args, "--tau", "8", "--mode", "det", "--out", str(out)]) == 0
    capsys.readouterr()
    return out
