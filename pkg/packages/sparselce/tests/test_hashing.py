# Copyright 2025 Altaira Labs
# SPDX-License-Identifier: Apache-2.0

"""Tests for fingerprints and the min-wise hash family."""

import numpy as np
import pytest
from sparselce import Fingerprinter, MinwiseHasher, ParameterError, PositionRangeError, Text
from sparselce.hashing import MERSENNE_61
from sparselce.oracle import count_fingerprint_collisions


class TestFingerprinter:
    """Tests for Fingerprinter."""

    def test_window_is_most_significant_first(self) -> None:
        """Test the first symbol carries the highest power."""
        fp = Fingerprinter(base=256, max_length=10)
        text = Text.from_string("abc")
        assert fp.window(text, 1, 3) == (98 * 256 + 99) * 256 + 100

    def test_empty_window(self) -> None:
        """Test a zero-length window has the empty fingerprint."""
        fp = Fingerprinter(base=7, max_length=4)
        assert fp.window(Text.from_string("abc"), 2, 0) == 0

    def test_window_outside_text_raises(self) -> None:
        """Test windows must stay inside [1..n]."""
        fp = Fingerprinter(base=7, max_length=4)
        with pytest.raises(PositionRangeError) as exc_info:
            fp.window(Text.from_string("abc"), 2, 3)
        assert exc_info.value.position == 4

    def test_sliding_matches_scratch(self) -> None:
        """Test rolling updates agree with recomputation."""
        rng = np.random.default_rng(5)
        text = Text.from_string("abracadabra")
        fp = Fingerprinter.create(text.n, rng)
        rolled = list(fp.iter_windows(text, 4, 1, text.n - 3))
        assert rolled == [fp.window(text, i, 4) for i in range(1, text.n - 2)]

    def test_iter_windows_empty_range(self) -> None:
        """Test an empty start range yields nothing."""
        fp = Fingerprinter(base=3, max_length=2)
        assert list(fp.iter_windows(Text.from_string("ab"), 2, 2, 1)) == []

    def test_power_beyond_table(self) -> None:
        """Test powers past the table fall back to pow."""
        fp = Fingerprinter(base=3, modulus=1000, max_length=2)
        assert fp.power(2) == 9
        assert fp.power(7) == pow(3, 7, 1000)

    def test_create_rejects_small_modulus(self) -> None:
        """Test the modulus must exceed n to the exponent."""
        with pytest.raises(ParameterError) as exc_info:
            Fingerprinter.create(1000, np.random.default_rng(0), 3, modulus=10**9)
        assert "fingerprint_exponent" in str(exc_info.value)

    def test_create_uses_mersenne_prime(self) -> None:
        """Test the default modulus and a base in range."""
        fp = Fingerprinter.create(100, np.random.default_rng(1))
        assert fp.modulus == MERSENNE_61
        assert 1 <= fp.base < MERSENNE_61

    def test_rejects_bad_base(self) -> None:
        """Test the base must lie below the modulus."""
        with pytest.raises(ParameterError):
            Fingerprinter(base=0, modulus=11)

    def test_no_collisions_on_random_text(self, random_text: Text) -> None:
        """Test distinct windows of a random text get distinct fingerprints."""
        fp = Fingerprinter.create(random_text.n, np.random.default_rng(2))
        values = list(fp.iter_windows(random_text, 12, 1, random_text.n - 11))
        assert count_fingerprint_collisions(random_text, 12, values) == 0


class TestMinwiseHasher:
    """Tests for MinwiseHasher."""

    def test_evaluates_polynomial(self) -> None:
        """Test h(x) = 2x + 3 over GF(7)."""
        h = MinwiseHasher((2, 3), q=7)
        assert h(1) == 5
        assert h(5) == 6

    def test_folds_large_inputs(self) -> None:
        """Test inputs at or above q are reduced first."""
        h = MinwiseHasher((2, 3), q=7)
        assert h(8) == h(1)

    def test_needs_two_coefficients(self) -> None:
        """Test the family degree is at least 2."""
        with pytest.raises(ParameterError) as exc_info:
            MinwiseHasher((4,), q=7)
        assert "coefficients" in str(exc_info.value)

    def test_rejects_coefficient_out_of_field(self) -> None:
        """Test coefficients must lie in [0, q)."""
        with pytest.raises(ParameterError):
            MinwiseHasher((7, 1), q=7)

    def test_random_is_seeded(self) -> None:
        """Test equal seeds draw equal functions."""
        a = MinwiseHasher.random(np.random.default_rng(9), degree=8)
        b = MinwiseHasher.random(np.random.default_rng(9), degree=8)
        assert a == b
        assert len(a.coefficients) == 8
