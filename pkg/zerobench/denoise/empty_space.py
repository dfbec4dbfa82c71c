"""Signal-domain estimation by aggregating zero-free balls."""

import logging

import numpy as np
import scipy.ndimage
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.detection.adaptive import estimate_r0
from zerobench.spatial.pattern import PlanarPointSet, ZeroAnalysis, analyze_zeros
from zerobench.tf.stft import StftParams, TFMask, mask_reconstruct

logger = logging.getLogger(__name__)

Scale = float | str


def grid_sampling(params: StftParams) -> tuple[float, float]:
    """Plane length of one grid step along time and frequency."""
    return (1.0 / params.T, params.T / params.K)


def cell_images(grid_shape: tuple[int, int], params: StftParams) -> NDArray[np.float64]:
    """Plane coordinates (n / T, k T / K) of every cell, shape (rows, cols, 2)."""
    du, dv = grid_sampling(params)
    n = np.arange(grid_shape[0]) * du
    k = np.arange(grid_shape[1]) * dv
    uu, vv = np.meshgrid(n, k, indexing="ij")
    return np.stack([uu, vv], axis=-1)


def zero_cells(
    zeros: PlanarPointSet, grid_shape: tuple[int, int], params: StftParams
) -> NDArray[np.bool_]:
    """Rasterize plane zeros back onto the grid they were scaled from."""
    n = zeros.points[:, 0] * params.T
    k = zeros.points[:, 1] * params.K / params.T
    rn, rk = np.rint(n), np.rint(k)
    if np.any(np.abs(n - rn) > 1e-6) or np.any(np.abs(k - rk) > 1e-6):
        raise InvalidParameterError("Zeros do not lie on the grid of the given parameters")
    rows, cols = grid_shape
    if np.any((rn < 0) | (rn >= rows) | (rk < 0) | (rk >= cols)):
        raise InvalidParameterError("Zeros fall outside the grid")
    occupied = np.zeros(grid_shape, dtype=bool)
    occupied[rn.astype(np.int64), rk.astype(np.int64)] = True
    return occupied


def center_set(
    zeros: PlanarPointSet,
    r0: float,
    grid_shape: tuple[int, int],
    params: StftParams,
    within_window: bool = False,
) -> NDArray[np.bool_]:
    """Grid cells farther than r0 from every zero.

    With `within_window`, cells outside the zeros' observation window are never centers.
    """
    occupied = zero_cells(zeros, grid_shape, params)
    if occupied.any():
        to_zero = scipy.ndimage.distance_transform_edt(~occupied, sampling=grid_sampling(params))
        centers = np.asarray(to_zero > r0, dtype=bool)
    else:
        centers = np.ones(grid_shape, dtype=bool)
    if within_window:
        images = cell_images(grid_shape, params).reshape(-1, 2)
        centers &= zeros.window.contains(images).reshape(grid_shape)
    return centers


def empty_space_mask(
    zeros: PlanarPointSet,
    r0: float,
    grid_shape: tuple[int, int],
    scale_params: StftParams,
    within_window: bool = False,
) -> TFMask:
    """Union of all zero-free balls of radius r0 centered on grid cells.

    Two exact Euclidean distance transforms on the anisotropic grid: distance to the zeros
    selects the centers (> r0), distance to the centers selects the covered cells (<= r0).
    Without zeros every cell is covered. `within_window` keeps centers inside the zeros'
    observation window, leaving the unsearched border out.

    Raises:
        InvalidParameterError: If r0 is not positive.
    """
    if not r0 > 0:
        raise InvalidParameterError(f"Ball radius must be positive, got {r0}")
    centers = center_set(zeros, r0, grid_shape, scale_params, within_window)
    if not centers.any():
        return TFMask.full(grid_shape, False)
    to_center = scipy.ndimage.distance_transform_edt(
        ~centers, sampling=grid_sampling(scale_params)
    )
    return TFMask(values=np.asarray(to_center <= r0, dtype=bool))


def band_mask(band: TFMask, K: int) -> TFMask:
    """Embed a mask over bins 0..K/2 into a full N x K mask."""
    rows, cols = band.shape
    full = np.zeros((rows, K), dtype=bool)
    full[:, :cols] = band.values
    return TFMask(values=full)


def resolve_scale(analysis: ZeroAnalysis, r0: Scale, m: int, seed: int) -> float:
    """Fixed plane-unit scale, or the adaptive r0 estimate when given "auto"."""
    if r0 == "auto":
        value, detected = estimate_r0(analysis, m=m, seed=seed)
        logger.info(f"Adaptive r0={value:.4f} (detected={detected})")
        return value
    if isinstance(r0, str):
        raise InvalidParameterError(f"Scale must be a number or 'auto', got '{r0}'")
    return float(r0)


def reconstruct_from_band(
    analysis: ZeroAnalysis, band: TFMask
) -> tuple[NDArray[np.generic], TFMask]:
    """Invert the analytic STFT through a band mask; real output for real input."""
    mask = band_mask(band, analysis.params.K)
    estimate = mask_reconstruct(analysis.grid, mask)
    return (estimate.real if analysis.real_input else estimate), mask


def empty_space_denoise(
    x: NDArray[np.generic],
    r0: Scale = "auto",
    m: int = 199,
    seed: int = 0,
    params: StftParams | None = None,
    within_window: bool = False,
) -> tuple[NDArray[np.generic], TFMask]:
    """Empty Space denoising with T = sqrt(K).

    Args:
        x: Noisy signal.
        r0: Ball radius in plane units, or "auto" for the adaptive estimate.
        m: Null simulations for the adaptive estimate.
        seed: Seed of the null ensemble.
        params: Analysis parameters; defaults to StftParams.default(N).
        within_window: Keep ball centers inside the window searched for zeros.

    Returns:
        (estimate, N x K mask)
    """
    analysis = analyze_zeros(x, params)
    radius = resolve_scale(analysis, r0, m, seed)
    band_shape = analysis.zeros.shape
    band = empty_space_mask(
        analysis.pattern, radius, band_shape, analysis.params, within_window
    )
    return reconstruct_from_band(analysis, band)
