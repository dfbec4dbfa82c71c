"""Unit-energy Gaussian analysis windows."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError

# Taps beyond this relative level are dropped: exp(-pi (L/T)^2) < 1e-16.
TRUNCATION_LEVEL = 1e-16


@dataclass(frozen=True)
class AnalysisWindow:
    """Symmetric window sampled on [-support_half_len, support_half_len].

    `samples[support_half_len]` is the center tap g[0].
    """

    width_T: float
    support_half_len: int
    samples: NDArray[np.float64]

    @property
    def offsets(self) -> NDArray[np.int64]:
        """Tap positions m = -L..L matching `samples`."""
        return np.arange(-self.support_half_len, self.support_half_len + 1)

    @property
    def center(self) -> float:
        """Center sample g[0]."""
        return float(self.samples[self.support_half_len])

    def derivative(self) -> NDArray[np.float64]:
        """Analytic derivative g'[m] = -(2 pi m / T^2) g[m] of the Gaussian."""
        m = self.offsets.astype(np.float64)
        return -(2.0 * math.pi * m / self.width_T**2) * self.samples

    def time_weighted(self) -> NDArray[np.float64]:
        """Auxiliary window m * g[m]."""
        return self.offsets.astype(np.float64) * self.samples

    def periodize(self, taps: NDArray[np.float64], N: int) -> NDArray[np.float64]:
        """Wrap `taps` (aligned with `offsets`) onto an N-periodic grid."""
        out = np.zeros(N, dtype=np.float64)
        np.add.at(out, self.offsets % N, taps)
        return out


def support_half_len(T: float) -> int:
    """Smallest half length keeping every dropped tap below the truncation level."""
    return math.ceil(T * math.sqrt(math.log(1.0 / TRUNCATION_LEVEL) / math.pi))


def gaussian_window(T: float, N: int) -> AnalysisWindow:
    """Build the unit-energy Gaussian window of width T.

    g[n] = 2^{1/4} / sqrt(T) * exp(-pi (n/T)^2), truncated and renormalized so that the
    discrete energy is exactly one.

    Args:
        T: Window width in samples.
        N: Length of the signals the window will analyze.

    Returns:
        The sampled window.

    Raises:
        InvalidParameterError: If T is not positive or N < 1.
    """
    if not T > 0 or not math.isfinite(T):
        raise InvalidParameterError(f"Window width must be positive, got {T}")
    if N < 1:
        raise InvalidParameterError(f"Signal length must be at least 1, got {N}")

    half = support_half_len(T)
    m = np.arange(-half, half + 1, dtype=np.float64)
    samples = 2.0**0.25 / math.sqrt(T) * np.exp(-math.pi * (m / T) ** 2)
    samples /= np.sqrt(np.sum(samples**2))
    return AnalysisWindow(width_T=float(T), support_half_len=half, samples=samples)
