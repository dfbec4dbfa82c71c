"""Mono WAV input and output for the command-line surface."""

import logging
import os
import tempfile
from pathlib import Path

import numpy as np
import scipy.io.wavfile
from numpy.typing import NDArray

from zerobench.core.errors import DegenerateInputError, SignalFormatError
from zerobench.signals.base import UNKNOWN_COMPONENTS, Signal

logger = logging.getLogger(__name__)

INT16_SCALE = 32768.0


def load_wav(path: Path) -> Signal:
    """Load a mono 16-bit PCM or float32 WAV file normalized to unit energy.

    The returned signal has unknown component structure: an empty `inst_freq` and
    `components_per_time` filled with -1.

    Raises:
        SignalFormatError: If the file is unreadable, multi-channel or of another sample type.
        DegenerateInputError: If every sample is zero.
    """
    try:
        rate, data = scipy.io.wavfile.read(path)
    except (OSError, ValueError) as e:
        raise SignalFormatError(f"Cannot read WAV file {path}: {e}") from e

    if data.ndim != 1:
        raise SignalFormatError(f"{path}: expected a mono file, got {data.shape[1]} channels")
    if data.dtype == np.int16:
        samples = data.astype(np.float64) / INT16_SCALE
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
    else:
        raise SignalFormatError(f"{path}: unsupported sample type {data.dtype}")

    norm = float(np.linalg.norm(samples))
    if norm == 0.0:
        raise DegenerateInputError(f"{path}: signal has zero energy")
    logger.debug(f"Loaded {path} ({samples.shape[0]} samples at {rate} Hz)")
    N = samples.shape[0]
    return Signal(
        name=path.stem,
        samples=samples / norm,
        inst_freq=np.empty((0, N)),
        components_per_time=np.full(N, UNKNOWN_COMPONENTS, dtype=np.int64),
        params={"sample_rate": int(rate)},
    )


def write_wav(path: Path, samples: NDArray[np.generic], sample_rate: int) -> None:
    """Write the real part of `samples` as float32 mono, replacing `path` atomically."""
    data = np.real(np.asarray(samples)).astype(np.float32)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".wav")
    os.close(fd)
    try:
        scipy.io.wavfile.write(tmp, sample_rate, data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
