"""Monte Carlo detection of signal structure in spectrogram zero patterns."""

from zerobench.detection.adaptive import (
    FALLBACK_R0,
    SCALE_INTERVAL,
    adaptive_r0,
    detect_signal,
    estimate_r0,
    run_test,
)
from zerobench.detection.ensemble import (
    NULL_ENSEMBLES,
    EnsembleCache,
    NullEnsemble,
    cached_null_ensemble,
    signal_curve,
    simulate_null_ensemble,
)
from zerobench.detection.montecarlo import (
    TestConfig,
    TestKind,
    TestOutcome,
    envelope_test,
    mad_test,
    rank_envelope_test,
)

__all__ = [
    "FALLBACK_R0",
    "NULL_ENSEMBLES",
    "SCALE_INTERVAL",
    "EnsembleCache",
    "NullEnsemble",
    "TestConfig",
    "TestKind",
    "TestOutcome",
    "adaptive_r0",
    "cached_null_ensemble",
    "detect_signal",
    "envelope_test",
    "estimate_r0",
    "mad_test",
    "rank_envelope_test",
    "run_test",
    "signal_curve",
    "simulate_null_ensemble",
]
