"""Adaptive scale-of-interaction estimation and end-to-end detection."""

import logging

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.detection.ensemble import cached_null_ensemble, signal_curve
from zerobench.detection.montecarlo import (
    TESTS,
    TestConfig,
    TestKind,
    TestOutcome,
    rank_envelope_test,
)
from zerobench.spatial.pattern import ZeroAnalysis, analyze_zeros
from zerobench.spatial.summary import (
    DEFAULT_REF_DENSITY,
    CurveKind,
    RadiusGrid,
    default_radius_grid,
    summary_curve,
)
from zerobench.tf.stft import StftParams

logger = logging.getLogger(__name__)

SCALE_INTERVAL = (0.65, 1.05)
FALLBACK_R0 = 0.8


def estimate_r0(
    analysis: ZeroAnalysis,
    m: int = 199,
    seed: int = 0,
    alpha: float = 0.05,
    radii: RadiusGrid | None = None,
    ref_density: float = DEFAULT_REF_DENSITY,
) -> tuple[float, bool]:
    """Estimate r0 from an already analyzed signal.

    Runs the conservative rank envelope test with F_tilde curves on [0.65, 1.05]. On rejection
    r0 is the radius of largest gap between the observed curve and the lowest simulated curve
    (first radius on ties); otherwise r0 falls back to 0.8.

    Returns:
        (r0, detected)
    """
    grid = radii or default_radius_grid()
    N = analysis.grid.N
    observed = summary_curve(analysis.pattern, grid, CurveKind.F_TILDE, ref_density)
    ensemble = cached_null_ensemble(
        m, N, analysis.params, grid, CurveKind.F_TILDE, seed, ref_density
    )
    cfg = TestConfig(statistic_kind=CurveKind.F_TILDE, alpha=alpha, interval=SCALE_INTERVAL)
    outcome = rank_envelope_test(observed, ensemble, cfg)
    if not outcome.reject:
        logger.debug(f"No departure from noise (p+={outcome.p_plus:.3f}); r0={FALLBACK_R0}")
        return FALLBACK_R0, False

    simulated = ensemble.matrix()
    finite = np.isfinite(observed.values) & np.all(np.isfinite(simulated), axis=0)
    selection = grid.within(*SCALE_INTERVAL) & finite
    lowest = simulated[:, selection].min(axis=0)
    gap = np.abs(lowest - observed.values[selection])
    r0 = float(grid.radii[selection][int(np.argmax(gap))])
    logger.debug(f"Detected structure (p+={outcome.p_plus:.3f}); r0={r0:.4f}")
    return r0, True


def adaptive_r0(
    x: NDArray[np.generic],
    m: int = 199,
    seed: int = 0,
    params: StftParams | None = None,
    alpha: float = 0.05,
    radii: RadiusGrid | None = None,
) -> tuple[float, bool]:
    """Adaptive r0 for signal x; see `estimate_r0`.

    Raises:
        InvalidParameterError: If m < 1.
    """
    if m < 1:
        raise InvalidParameterError(f"Ensemble size must be >= 1, got {m}")
    return estimate_r0(analyze_zeros(x, params), m, seed, alpha, radii)


def run_test(
    x: NDArray[np.generic],
    test_kind: TestKind | str,
    cfg: TestConfig,
    m: int = 199,
    seed: int = 0,
    params: StftParams | None = None,
    radii: RadiusGrid | None = None,
) -> TestOutcome:
    """Run a global test of x against the white-noise ensemble.

    Args:
        x: Signal to test.
        test_kind: "envelope", "mad" or "rank".
        cfg: Test parameters; `cfg.statistic_kind` selects F or F_tilde.
        m: Number of null simulations.
        seed: Seed of the null ensemble.
        params: Analysis parameters; defaults to StftParams.default(N).
        radii: Radius grid.

    Returns:
        The test outcome with its statistics.
    """
    kind = TestKind(test_kind)
    N = np.asarray(x).shape[0]
    params = params or StftParams.default(N)
    grid = radii or default_radius_grid()
    observed = signal_curve(x, params, grid, cfg.statistic_kind)
    ensemble = cached_null_ensemble(m, N, params, grid, cfg.statistic_kind, seed)
    return TESTS[kind](observed, ensemble, cfg)


def detect_signal(
    x: NDArray[np.generic],
    test_kind: TestKind | str,
    cfg: TestConfig,
    m: int = 199,
    seed: int = 0,
    params: StftParams | None = None,
    radii: RadiusGrid | None = None,
) -> bool:
    """Decide whether x departs from white noise; see `run_test`."""
    return run_test(x, test_kind, cfg, m, seed, params, radii).reject
