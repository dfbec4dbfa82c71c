"""Planar point patterns built from spectrogram zeros."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.spatial import cKDTree

from zerobench.core.errors import InvalidParameterError
from zerobench.tf.stft import (
    Spectrogram,
    StftGrid,
    StftParams,
    analytic_signal,
    positive_band,
    spectrogram,
    stft,
)
from zerobench.tf.zeros import GridZeroSet, find_zeros


@dataclass(frozen=True)
class Window:
    """Axis-aligned observation rectangle [u_min, u_max] x [v_min, v_max]."""

    u_min: float
    u_max: float
    v_min: float
    v_max: float

    def __post_init__(self) -> None:
        if not (self.u_max > self.u_min and self.v_max > self.v_min):
            raise InvalidParameterError(f"Observation window has no area: {self}")

    @property
    def width(self) -> float:
        return self.u_max - self.u_min

    @property
    def height(self) -> float:
        return self.v_max - self.v_min

    @property
    def shorter_side(self) -> float:
        return min(self.width, self.height)

    def contains(self, points: NDArray[np.float64]) -> NDArray[np.bool_]:
        u, v = points[:, 0], points[:, 1]
        return (u >= self.u_min) & (u <= self.u_max) & (v >= self.v_min) & (v <= self.v_max)

    def border_distance(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Distance from each point to the window boundary."""
        u, v = points[:, 0], points[:, 1]
        return np.minimum.reduce([u - self.u_min, self.u_max - u, v - self.v_min, self.v_max - v])

    def translated(self, du: float, dv: float) -> "Window":
        return Window(self.u_min + du, self.u_max + du, self.v_min + dv, self.v_max + dv)


@dataclass(frozen=True)
class PlanarPointSet:
    """Points (u, v) observed inside a rectangular window."""

    points: NDArray[np.float64]
    window: Window

    def __post_init__(self) -> None:
        if self.points.ndim != 2 or self.points.shape[1] != 2:
            raise InvalidParameterError(f"Points must be an (n, 2) array, got {self.points.shape}")
        if not np.all(self.window.contains(self.points)):
            raise InvalidParameterError("Every point must lie inside the observation window")

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def nearest_distances(self, queries: NDArray[np.float64]) -> NDArray[np.float64]:
        """Nearest-point distance for each query row; +inf when the set is empty."""
        queries = np.asarray(queries, dtype=np.float64).reshape(-1, 2)
        if len(self) == 0:
            return np.full(queries.shape[0], np.inf)
        distances, _ = cKDTree(self.points).query(queries, k=1)
        return np.asarray(distances, dtype=np.float64)


def nearest_distance(pts: PlanarPointSet, query: tuple[float, float]) -> float:
    """Exact Euclidean distance from `query` to the closest point of `pts` (+inf if empty)."""
    return float(pts.nearest_distances(np.array([query], dtype=np.float64))[0])


def scale_zeros(zeros: GridZeroSet, N: int, K: int, T: float) -> PlanarPointSet:
    """Map grid zeros (n, k) to the isotropic plane (n / T, k T / K).

    The observation window is the margin-trimmed search rectangle under the same map.
    """
    if not T > 0:
        raise InvalidParameterError(f"Window width must be positive, got {T}")
    rows, cols = zeros.shape
    if rows != N:
        raise InvalidParameterError(f"Zero set has {rows} rows, expected N={N}")
    margin = zeros.margin
    freq_scale = T / K
    window = Window(
        u_min=margin / T,
        u_max=(rows - 1 - margin) / T,
        v_min=margin * freq_scale,
        v_max=(cols - 1 - margin) * freq_scale,
    )
    points = np.empty((len(zeros), 2), dtype=np.float64)
    points[:, 0] = zeros.points[:, 0] / T
    points[:, 1] = zeros.points[:, 1] * freq_scale
    return PlanarPointSet(points=points, window=window)


@dataclass(frozen=True)
class ZeroAnalysis:
    """STFT of a signal together with its zeros on the nonnegative-frequency band."""

    grid: StftGrid
    zeros: GridZeroSet
    pattern: PlanarPointSet
    params: StftParams
    real_input: bool


def analyze_zeros(x: NDArray[np.generic], params: StftParams | None = None) -> ZeroAnalysis:
    """Run stft -> spectrogram -> find_zeros -> scale_zeros on the analytic form of x.

    Zeros are searched on frequency bins 0..K/2, where the analytic signal carries its energy.
    """
    samples = np.asarray(x)
    N = samples.shape[0]
    params = params or StftParams.default(N)
    real_input = not np.iscomplexobj(samples)
    grid = stft(analytic_signal(samples), params.window(N), params.K)
    band = Spectrogram(values=spectrogram(grid).values[:, : positive_band(params.K)])
    zeros = find_zeros(band, params.margin)
    pattern = scale_zeros(zeros, N, params.K, params.T)
    return ZeroAnalysis(
        grid=grid, zeros=zeros, pattern=pattern, params=params, real_input=real_input
    )
