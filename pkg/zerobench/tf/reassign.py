"""Reassignment operators and frequency synchrosqueezing."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.tf.stft import StftGrid, stft, windowed_transform
from zerobench.tf.window import AnalysisWindow

# Cells whose spectrogram falls below this fraction of the maximum are not reassigned.
DIVISION_FLOOR = 1e-14


@dataclass(frozen=True)
class Reassignment:
    """Time and frequency reassignment maps; invalid cells hold NaN."""

    tau_hat: NDArray[np.float64]
    nu_hat: NDArray[np.float64]
    grid: StftGrid

    @property
    def valid(self) -> NDArray[np.bool_]:
        return np.isfinite(self.nu_hat)


def reassignment_operators(
    x: NDArray[np.generic], window: AnalysisWindow, K: int
) -> Reassignment:
    """Compute the reassignment maps of x.

    tau[n, k] = n + Re(V^{mg} / V^g) and nu[n, k] = k - K / (2 pi) Im(V^{g'} / V^g), using the
    auxiliary windows m g[m] and the analytic derivative g'.

    Args:
        x: Signal (analyzed as given).
        window: Gaussian analysis window.
        K: Number of frequency bins.

    Returns:
        Reassignment maps together with the plain STFT grid.
    """
    grid = stft(x, window, K)
    samples = np.asarray(x).astype(np.complex128)
    N = grid.N
    v_time = windowed_transform(samples, window.periodize(window.time_weighted(), N), K)
    v_deriv = windowed_transform(samples, window.periodize(window.derivative(), N), K)

    power = grid.values.real**2 + grid.values.imag**2
    peak = float(power.max()) if power.size else 0.0
    valid = power >= DIVISION_FLOOR * peak if peak > 0 else np.zeros_like(power, dtype=bool)

    ratio_time = np.full(grid.values.shape, np.nan + 0j, dtype=np.complex128)
    ratio_freq = np.full(grid.values.shape, np.nan + 0j, dtype=np.complex128)
    np.divide(v_time, grid.values, out=ratio_time, where=valid)
    np.divide(v_deriv, grid.values, out=ratio_freq, where=valid)

    n = np.arange(N, dtype=np.float64)[:, None]
    k = np.arange(K, dtype=np.float64)[None, :]
    tau_hat = n + ratio_time.real
    nu_hat = k - K / (2.0 * math.pi) * ratio_freq.imag
    return Reassignment(tau_hat=tau_hat, nu_hat=nu_hat, grid=grid)


def synchrosqueeze(grid: StftGrid, nu_hat: NDArray[np.float64]) -> NDArray[np.complex128]:
    """Move each coefficient to the frequency bin nearest its reassigned frequency.

    T[n, k] = sum over q with |k - nu[n, q]| <= 1/2 of V[n, q] exp(2i pi q n / K). Bins with a
    NaN reassignment or a target outside [0, K) contribute nothing.

    Raises:
        InvalidParameterError: If shapes differ.
    """
    if nu_hat.shape != grid.values.shape:
        raise InvalidParameterError(
            f"Reassignment shape {nu_hat.shape} does not match grid {grid.values.shape}"
        )
    N, K = grid.shape
    n = np.arange(N)[:, None]
    q = np.arange(K)[None, :]
    phase = np.exp(2j * math.pi * ((n * q) % K) / K)
    lifted = grid.values * phase

    with np.errstate(invalid="ignore"):
        target = np.floor(nu_hat + 0.5)
        keep = np.isfinite(target) & (target >= 0) & (target <= K - 1)
    rows = np.broadcast_to(n, (N, K))[keep]
    cols = target[keep].astype(np.int64)

    out = np.zeros((N, K), dtype=np.complex128)
    np.add.at(out, (rows, cols), lifted[keep])
    return out
