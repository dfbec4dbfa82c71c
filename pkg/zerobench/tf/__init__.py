"""Time-frequency core: windows, STFT, spectrogram zeros and reassignment."""

from zerobench.tf.reassign import Reassignment, reassignment_operators, synchrosqueeze
from zerobench.tf.stft import (
    Spectrogram,
    StftGrid,
    StftParams,
    TFMask,
    analytic_signal,
    mask_reconstruct,
    spectrogram,
    stft,
)
from zerobench.tf.window import AnalysisWindow, gaussian_window
from zerobench.tf.zeros import GridZeroSet, find_zeros

__all__ = [
    "AnalysisWindow",
    "GridZeroSet",
    "Reassignment",
    "Spectrogram",
    "StftGrid",
    "StftParams",
    "TFMask",
    "analytic_signal",
    "find_zeros",
    "gaussian_window",
    "mask_reconstruct",
    "reassignment_operators",
    "spectrogram",
    "stft",
    "synchrosqueeze",
]
