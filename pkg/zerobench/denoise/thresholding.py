"""STFT thresholding with a robust noise-level estimate."""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.core.metrics import qrf
from zerobench.denoise.regions import isolated_region_count
from zerobench.tf.stft import StftGrid, StftParams, TFMask, stft, synthesize

HARD_C = 3.0
GARROTE_C = 2.0
# Median of |N(0, 1)|.
HALF_NORMAL_MEDIAN = 0.6745

ThresholdMode = Literal["hard", "garrote"]


def estimate_noise_std(grid: StftGrid) -> float:
    """sigma = sqrt(2) / 0.6745 * median |Re V| over all cells."""
    if grid.values.size == 0:
        raise InvalidParameterError("Cannot estimate noise on an empty grid")
    return math.sqrt(2.0) / HALF_NORMAL_MEDIAN * float(np.median(np.abs(grid.values.real)))


def _threshold_level(grid: StftGrid, c: float, noise_std: float | None) -> float:
    if not c > 0:
        raise InvalidParameterError(f"Threshold factor must be positive, got {c}")
    sigma = estimate_noise_std(grid) if noise_std is None else noise_std
    return c * sigma


def hard_threshold(grid: StftGrid, c: float = HARD_C, noise_std: float | None = None) -> StftGrid:
    """Keep coefficients with |V| > c * sigma, zero the rest."""
    lam = _threshold_level(grid, c, noise_std)
    keep = np.abs(grid.values) > lam
    return grid.with_values(np.where(keep, grid.values, 0))


def garrote_threshold(
    grid: StftGrid, c: float = GARROTE_C, noise_std: float | None = None
) -> StftGrid:
    """Non-negative garrote shrinkage (1 - lambda^2 / |V|^2) V above lambda = c * sigma."""
    lam = _threshold_level(grid, c, noise_std)
    magnitude2 = grid.values.real**2 + grid.values.imag**2
    keep = np.abs(grid.values) > lam
    factor = np.zeros_like(magnitude2)
    np.divide(lam**2, magnitude2, out=factor, where=keep)
    return grid.with_values(np.where(keep, (1.0 - factor) * grid.values, 0))


def threshold_denoise(
    x: NDArray[np.generic],
    mode: ThresholdMode = "hard",
    c: float | None = None,
    params: StftParams | None = None,
) -> tuple[NDArray[np.generic], TFMask]:
    """Threshold the STFT of x and invert.

    The STFT is taken of x as given (no analytic conversion), so the median estimator sees
    the full noise distribution.

    Returns:
        (estimate, mask of surviving coefficients). The estimate is real when x is real.
    """
    samples = np.asarray(x)
    N = samples.shape[0]
    params = params or StftParams.default(N)
    grid = stft(samples, params.window(N), params.K)
    if mode == "hard":
        shrunk = hard_threshold(grid, HARD_C if c is None else c)
    elif mode == "garrote":
        shrunk = garrote_threshold(grid, GARROTE_C if c is None else c)
    else:
        raise InvalidParameterError(f"Unknown threshold mode '{mode}'")
    estimate = synthesize(shrunk.values, grid)
    mask = TFMask(values=shrunk.values != 0)
    return (estimate.real if not np.iscomplexobj(samples) else estimate), mask


@dataclass(frozen=True)
class SweepPoint:
    """Hard-threshold outcome at one absolute threshold level."""

    lam: float
    qrf: float
    regions: int


def threshold_sweep(
    noisy: NDArray[np.generic],
    clean: NDArray[np.generic],
    lambdas: NDArray[np.float64],
    params: StftParams | None = None,
) -> list[SweepPoint]:
    """Hard thresholding over absolute levels, reporting QRF and isolated mask regions.

    Regions are counted on the nonnegative-frequency half of the mask.
    """
    samples = np.asarray(noisy)
    N = samples.shape[0]
    params = params or StftParams.default(N)
    grid = stft(samples, params.window(N), params.K)
    magnitude = np.abs(grid.values)
    half = params.K // 2 + 1
    points = []
    for lam in lambdas:
        keep = magnitude > lam
        estimate = synthesize(np.where(keep, grid.values, 0), grid)
        if not np.iscomplexobj(samples):
            estimate = estimate.real
        points.append(
            SweepPoint(
                lam=float(lam),
                qrf=qrf(clean, estimate),
                regions=isolated_region_count(TFMask(values=keep[:, :half])),
            )
        )
    return points
