"""Tests for metrics, confidence intervals and random streams."""

import numpy as np
import pytest

from zerobench.core.errors import InvalidParameterError
from zerobench.core.metrics import (
    QRF_CAP_DB,
    bonferroni_adjust,
    clopper_pearson,
    corr_coeff,
    detection_power,
    qrf,
    t_interval,
)
from zerobench.core.rng import derive_seed, stream


class TestQrf:
    """Tests for qrf."""

    def test_exact_reconstruction_is_capped(self) -> None:
        x = np.random.default_rng(0).standard_normal(64)
        assert qrf(x, x.copy()) == QRF_CAP_DB

    def test_known_values(self) -> None:
        """A 10% error gives 20 dB, a zero estimate 0 dB."""
        x = np.random.default_rng(1).standard_normal(64)
        assert qrf(x, 0.9 * x) == pytest.approx(20.0)
        assert qrf(x, np.zeros(64)) == pytest.approx(0.0)

    def test_length_mismatch(self) -> None:
        with pytest.raises(InvalidParameterError, match="Length mismatch"):
            qrf(np.ones(4), np.ones(5))

    def test_zero_reference(self) -> None:
        with pytest.raises(InvalidParameterError, match="nonzero energy"):
            qrf(np.zeros(4), np.ones(4))


class TestCorrCoeff:
    """Tests for corr_coeff."""

    def test_extremes(self) -> None:
        """Identical signals give 1, opposite signals -1, a zero estimate 0."""
        x = np.random.default_rng(2).standard_normal(64)
        assert corr_coeff(x, 3.0 * x) == pytest.approx(1.0)
        assert corr_coeff(x, -x) == pytest.approx(-1.0)
        assert corr_coeff(x, np.zeros(64)) == 0.0

    def test_modulus(self) -> None:
        """A quarter-turn phase shift only correlates in modulus."""
        x = np.random.default_rng(3).standard_normal(64).astype(np.complex128)
        assert corr_coeff(x, 1j * x) == pytest.approx(0.0, abs=1e-12)
        assert corr_coeff(x, 1j * x, modulus=True) == pytest.approx(1.0)


class TestIntervals:
    """Tests for detection power, Clopper-Pearson, Bonferroni and t intervals."""

    def test_detection_power(self) -> None:
        assert detection_power([True, False, True, True]) == pytest.approx(0.75)
        with pytest.raises(InvalidParameterError, match="at least one"):
            detection_power([])

    def test_clopper_pearson_midpoint(self) -> None:
        """5 of 10 at 95% is (0.187, 0.813)."""
        lo, hi = clopper_pearson(5, 10, 0.95)
        assert lo == pytest.approx(0.1871, abs=1e-3)
        assert hi == pytest.approx(0.8129, abs=1e-3)

    def test_clopper_pearson_edges(self) -> None:
        """All-or-nothing outcomes pin one end of the interval."""
        assert clopper_pearson(0, 10, 0.95) == pytest.approx((0.0, 1 - 0.025**0.1), abs=1e-8)
        assert clopper_pearson(10, 10, 0.95) == pytest.approx((0.025**0.1, 1.0), abs=1e-8)

    def test_clopper_pearson_invalid(self) -> None:
        with pytest.raises(InvalidParameterError, match="Invalid counts"):
            clopper_pearson(11, 10, 0.95)
        with pytest.raises(InvalidParameterError, match="Confidence"):
            clopper_pearson(5, 10, 1.0)

    def test_bonferroni(self) -> None:
        assert bonferroni_adjust(0.95, 5) == pytest.approx(0.99)
        assert bonferroni_adjust(0.95, 1) == pytest.approx(0.95)
        with pytest.raises(InvalidParameterError, match="at least one comparison"):
            bonferroni_adjust(0.95, 0)

    def test_t_interval(self) -> None:
        """[1, 2, 3] at 95% is 2 +- 4.303 / sqrt(3)."""
        lo, hi = t_interval([1.0, 2.0, 3.0], 0.95)
        half = 4.302653 / np.sqrt(3.0)
        assert lo == pytest.approx(2.0 - half, abs=1e-5)
        assert hi == pytest.approx(2.0 + half, abs=1e-5)

    def test_t_interval_single_value(self) -> None:
        assert t_interval([4.0], 0.95) == (4.0, 4.0)


class TestRandomStreams:
    """Tests for stream and derive_seed."""

    def test_same_key_same_draws(self) -> None:
        first = stream(7, 1, 2).standard_normal(8)
        second = stream(7, 1, 2).standard_normal(8)
        np.testing.assert_array_equal(first, second)

    def test_keys_are_independent(self) -> None:
        assert not np.array_equal(stream(7, 1).standard_normal(8), stream(7, 2).standard_normal(8))
        assert not np.array_equal(stream(7).standard_normal(8), stream(8).standard_normal(8))

    def test_derive_seed(self) -> None:
        """Derived seeds are deterministic 64-bit integers that depend on the key."""
        seed = derive_seed(1, 2, 3)
        assert seed == derive_seed(1, 2, 3)
        assert seed != derive_seed(1, 3, 2)
        assert 0 <= seed < 2**64
