"""Periodic discrete STFT, spectrogram and masked inversion.

Signals of length N are treated as N-periodic: V[n, k] = sum_l x[l] g[l - n] exp(-2i pi l k / K)
with l - n taken modulo N. With K >= N the masked inverse below is exact.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft
import scipy.signal
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.tf.window import AnalysisWindow, gaussian_window

# Rows transformed per FFT batch.
ROW_CHUNK = 256


@dataclass(frozen=True)
class StftGrid:
    """Complex N x K time-frequency coefficients with their analysis window."""

    values: NDArray[np.complex128]
    N: int
    K: int
    window: AnalysisWindow

    @property
    def shape(self) -> tuple[int, int]:
        return (self.N, self.K)

    @property
    def center(self) -> float:
        """Center sample of the N-periodized window, the g(0) of the inversion formula."""
        return float(self.window.periodize(self.window.samples, self.N)[0])

    def with_values(self, values: NDArray[np.complex128]) -> "StftGrid":
        """Copy of this grid carrying new coefficients."""
        if values.shape != self.values.shape:
            raise InvalidParameterError(
                f"Coefficient shape {values.shape} does not match grid {self.values.shape}"
            )
        return StftGrid(values=values, N=self.N, K=self.K, window=self.window)


@dataclass(frozen=True)
class Spectrogram:
    """Squared STFT modulus."""

    values: NDArray[np.float64]

    @property
    def shape(self) -> tuple[int, int]:
        rows, cols = self.values.shape
        return (int(rows), int(cols))


@dataclass(frozen=True)
class TFMask:
    """Boolean extraction mask over an N x K grid."""

    values: NDArray[np.bool_]

    @property
    def shape(self) -> tuple[int, int]:
        rows, cols = self.values.shape
        return (int(rows), int(cols))

    @classmethod
    def full(cls, shape: tuple[int, int], fill: bool) -> "TFMask":
        return cls(values=np.full(shape, fill, dtype=bool))

    def count(self) -> int:
        return int(np.count_nonzero(self.values))


@dataclass(frozen=True)
class StftParams:
    """Analysis parameters shared by every zero-based pipeline."""

    T: float
    K: int
    margin: int

    @classmethod
    def default(cls, N: int) -> "StftParams":
        """K = N, T = sqrt(K), margin = ceil(T)."""
        T = math.sqrt(N)
        return cls(T=T, K=N, margin=math.ceil(T))

    def window(self, N: int) -> AnalysisWindow:
        return gaussian_window(self.T, N)

    def key(self) -> tuple[float, int, int]:
        return (self.T, self.K, self.margin)


def analytic_signal(x: NDArray[np.generic]) -> NDArray[np.complex128]:
    """Analytic form of a real signal; complex input is returned unchanged.

    Negative-frequency DFT bins are zeroed and positive bins doubled, keeping DC and Nyquist,
    so the real part of the result is exactly `x`.
    """
    x = np.asarray(x)
    if np.iscomplexobj(x):
        return x.astype(np.complex128, copy=False)
    return np.asarray(scipy.signal.hilbert(x.astype(np.float64)), dtype=np.complex128)


def positive_band(K: int) -> int:
    """Number of nonnegative-frequency bins 0..K/2."""
    return K // 2 + 1


def windowed_transform(
    x: NDArray[np.complex128], taps: NDArray[np.float64], K: int
) -> NDArray[np.complex128]:
    """Transform x with an N-periodic window given as `taps[(l - n) mod N]`."""
    N = x.shape[0]
    ell = np.arange(N)
    out = np.empty((N, K), dtype=np.complex128)
    for start in range(0, N, ROW_CHUNK):
        stop = min(start + ROW_CHUNK, N)
        n = np.arange(start, stop)
        frames = x[None, :] * taps[(ell[None, :] - n[:, None]) % N]
        out[start:stop] = scipy.fft.fft(frames, n=K, axis=1)
    return out


def _check_dims(N: int, K: int) -> None:
    if N < 1:
        raise InvalidParameterError("Signal must contain at least one sample")
    if K < N:
        raise InvalidParameterError(f"K must be >= N for exact inversion (K={K}, N={N})")


def stft(x: NDArray[np.generic], window: AnalysisWindow, K: int) -> StftGrid:
    """Compute the periodic STFT of x.

    Args:
        x: Signal of length N (real or complex; analyzed as given).
        window: Analysis window.
        K: Number of frequency bins, K >= N.

    Returns:
        The N x K coefficient grid.

    Raises:
        InvalidParameterError: If K < N.
    """
    samples = np.asarray(x).astype(np.complex128)
    N = samples.shape[0]
    _check_dims(N, K)
    taps = window.periodize(window.samples, N)
    return StftGrid(values=windowed_transform(samples, taps, K), N=N, K=K, window=window)


def spectrogram(grid: StftGrid) -> Spectrogram:
    """Elementwise squared modulus of the grid."""
    values = grid.values.real**2 + grid.values.imag**2
    return Spectrogram(values=values)


def mask_reconstruct(grid: StftGrid, mask: TFMask) -> NDArray[np.complex128]:
    """Invert the masked STFT.

    s[n] = 1 / (K g(0)) * sum_k V[n, k] mask[n, k] exp(2i pi n k / K)

    Args:
        grid: STFT coefficients.
        mask: Cells to keep.

    Returns:
        Complex signal of length N.

    Raises:
        InvalidParameterError: If the mask shape differs from the grid shape.
    """
    if mask.shape != grid.shape:
        raise InvalidParameterError(f"Mask shape {mask.shape} does not match grid {grid.shape}")
    return synthesize(np.where(mask.values, grid.values, 0), grid)


def synthesize(values: NDArray[np.complex128], grid: StftGrid) -> NDArray[np.complex128]:
    """Apply the inversion formula to arbitrary coefficients on `grid`'s lattice."""
    n = np.arange(grid.N)
    # ifft already carries the 1/K factor; row n is evaluated at time n.
    rows = scipy.fft.ifft(values, axis=1)
    return np.asarray(rows[n, n] / grid.center, dtype=np.complex128)
