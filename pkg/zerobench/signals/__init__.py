"""Synthetic test signals, noise and WAV input."""

from zerobench.signals.bank import SIGNAL_CATALOG, list_signals, make_signal
from zerobench.signals.base import UNKNOWN_COMPONENTS, NoisySignal, Signal
from zerobench.signals.noise import add_noise_at_snr, noise_std
from zerobench.signals.wav import load_wav, write_wav

__all__ = [
    "SIGNAL_CATALOG",
    "UNKNOWN_COMPONENTS",
    "NoisySignal",
    "Signal",
    "add_noise_at_snr",
    "list_signals",
    "load_wav",
    "make_signal",
    "noise_std",
    "write_wav",
]
