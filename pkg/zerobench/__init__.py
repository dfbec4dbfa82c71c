"""Zerobench - time-frequency detection and denoising with spectrogram zeros."""

__version__ = "0.1.0"
