"""Null-hypothesis ensembles of summary curves from white-noise spectrograms."""

import logging
import threading
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.core.rng import stream
from zerobench.spatial.pattern import analyze_zeros
from zerobench.spatial.summary import (
    DEFAULT_REF_DENSITY,
    CurveKind,
    RadiusGrid,
    SummaryCurve,
    default_radius_grid,
    summary_curve,
)
from zerobench.tf.stft import StftParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NullEnsemble:
    """m summary curves simulated under H0, sharing one radius grid and kind."""

    curves: tuple[SummaryCurve, ...]
    seed: int
    signal_length: int
    stft_params: StftParams
    radii: RadiusGrid
    kind: CurveKind

    def __post_init__(self) -> None:
        if not self.curves:
            raise InvalidParameterError("A null ensemble needs at least one curve")
        for curve in self.curves:
            if curve.kind != self.kind or curve.radii.key() != self.radii.key():
                raise InvalidParameterError("Ensemble curves must share radii and kind")

    @property
    def m(self) -> int:
        return len(self.curves)

    def matrix(self) -> NDArray[np.float64]:
        """Curves stacked as an (m, R) array."""
        return np.stack([c.values for c in self.curves])


def signal_curve(
    x: NDArray[np.generic],
    params: StftParams | None = None,
    radii: RadiusGrid | None = None,
    kind: CurveKind = CurveKind.F,
    ref_density: float = DEFAULT_REF_DENSITY,
) -> SummaryCurve:
    """Summary curve of the zero pattern of x."""
    analysis = analyze_zeros(x, params)
    return summary_curve(analysis.pattern, radii or default_radius_grid(), kind, ref_density)


def simulate_null_ensemble(
    m: int,
    signal_length: int,
    stft_params: StftParams | None = None,
    radii: RadiusGrid | None = None,
    kind: CurveKind = CurveKind.F,
    seed: int = 0,
    ref_density: float = DEFAULT_REF_DENSITY,
    workers: int = 1,
) -> NullEnsemble:
    """Simulate m white-noise realizations and estimate their summary curves.

    Realization j (1-based) draws from the stream keyed by (seed, j), so the ensemble does not
    depend on `workers`.

    Args:
        m: Number of realizations.
        signal_length: Noise length N.
        stft_params: Analysis parameters; defaults to StftParams.default(N).
        radii: Radius grid; defaults to default_radius_grid().
        kind: Summary statistic.
        seed: Base seed.
        ref_density: Reference lattice density for the estimator.
        workers: Thread pool size.

    Returns:
        The ensemble.

    Raises:
        InvalidParameterError: If m < 1.
    """
    if m < 1:
        raise InvalidParameterError(f"Ensemble size must be >= 1, got {m}")
    params = stft_params or StftParams.default(signal_length)
    grid = radii or default_radius_grid()

    def realize(j: int) -> SummaryCurve:
        noise = stream(seed, j).standard_normal(signal_length)
        return signal_curve(noise, params, grid, kind, ref_density)

    logger.info(f"Simulating null ensemble: m={m}, N={signal_length}, kind={kind.value}")
    indices = range(1, m + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            curves = tuple(pool.map(realize, indices))
    else:
        curves = tuple(realize(j) for j in indices)

    return NullEnsemble(
        curves=curves,
        seed=seed,
        signal_length=signal_length,
        stft_params=params,
        radii=grid,
        kind=kind,
    )


EnsembleKey = tuple[int, int, tuple[float, int, int], tuple[float, ...], CurveKind, int, float]


class EnsembleCache:
    """Bounded memo of null ensembles shared by every thread.

    Misses are simulated while holding the lock, so concurrent callers asking for the same
    ensemble wait for one simulation instead of running their own. `workers` sizes the thread
    pool of those simulations.
    """

    def __init__(self, maxsize: int = 16, workers: int = 1) -> None:
        self.maxsize = maxsize
        self.workers = workers
        self._entries: OrderedDict[EnsembleKey, NullEnsemble] = OrderedDict()
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def get(
        self,
        m: int,
        signal_length: int,
        params: StftParams,
        radii: RadiusGrid,
        kind: CurveKind,
        seed: int,
        ref_density: float,
    ) -> NullEnsemble:
        key = (m, signal_length, params.key(), radii.key(), kind, seed, ref_density)
        with self._lock:
            ensemble = self._entries.get(key)
            if ensemble is not None:
                self._entries.move_to_end(key)
                return ensemble
            ensemble = simulate_null_ensemble(
                m, signal_length, params, radii, kind, seed, ref_density, self.workers
            )
            self._entries[key] = ensemble
            if len(self._entries) > self.maxsize:
                self._entries.popitem(last=False)
            return ensemble

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()


NULL_ENSEMBLES = EnsembleCache()


def cached_null_ensemble(
    m: int,
    signal_length: int,
    stft_params: StftParams | None = None,
    radii: RadiusGrid | None = None,
    kind: CurveKind = CurveKind.F,
    seed: int = 0,
    ref_density: float = DEFAULT_REF_DENSITY,
) -> NullEnsemble:
    """Memoized `simulate_null_ensemble` for repeated calls with identical arguments."""
    params = stft_params or StftParams.default(signal_length)
    grid = radii or default_radius_grid()
    return NULL_ENSEMBLES.get(m, signal_length, params, grid, kind, seed, ref_density)
