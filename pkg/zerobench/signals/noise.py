"""White Gaussian noise at a prescribed signal-to-noise ratio."""

import math

import numpy as np

from zerobench.core.errors import InvalidParameterError
from zerobench.core.rng import stream
from zerobench.signals.base import NoisySignal, Signal


def noise_std(signal: Signal, snr_db: float) -> float:
    """Per-sample standard deviation giving ||s||^2 / (N sigma^2) = 10^(snr_db / 10)."""
    energy = signal.energy
    if energy <= 0:
        raise InvalidParameterError(f"Cannot set an SNR for the zero-energy signal '{signal.name}'")
    if math.isinf(snr_db) and snr_db > 0:
        return 0.0
    return math.sqrt(energy) / (math.sqrt(signal.N) * 10.0 ** (snr_db / 20.0))


def add_noise_at_snr(signal: Signal, snr_db: float, seed: int) -> NoisySignal:
    """Add real white Gaussian noise at the target SNR.

    The same (signal, snr_db, seed) always yields the same noise; snr_db = inf adds none.

    Raises:
        InvalidParameterError: If the signal has zero energy or snr_db is NaN or -inf.
    """
    if math.isnan(snr_db) or snr_db == -math.inf:
        raise InvalidParameterError(f"SNR must be a number or +inf, got {snr_db}")
    sigma = noise_std(signal, snr_db)
    noise = sigma * stream(seed).standard_normal(signal.N)
    return NoisySignal(
        samples=signal.samples + noise,
        clean=signal,
        noise=noise,
        target_snr_db=snr_db,
        seed=seed,
    )
