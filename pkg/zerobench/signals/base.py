"""Signal containers with ground-truth metadata."""

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError

# Component count of signals whose structure is unknown (e.g. loaded from disk).
UNKNOWN_COMPONENTS = -1


@dataclass(frozen=True)
class Signal:
    """A test signal and its time-frequency ground truth.

    `inst_freq` is J x N in cycles/sample with NaN where a component is inactive.
    """

    name: str
    samples: NDArray[np.float64]
    inst_freq: NDArray[np.float64]
    components_per_time: NDArray[np.int64]
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return int(self.samples.shape[0])

    @property
    def component_count(self) -> int:
        if self.inst_freq.shape[0] == 0 and np.all(self.components_per_time < 0):
            return UNKNOWN_COMPONENTS
        return int(self.inst_freq.shape[0])

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))

    def to_dict(self) -> dict[str, Any]:
        """Catalog-style description (no samples)."""
        return {
            "name": self.name,
            "N": self.N,
            "J": self.component_count,
            "params": dict(self.params),
        }


@dataclass(frozen=True)
class NoisySignal:
    """clean + white Gaussian noise at a target SNR."""

    samples: NDArray[np.float64]
    clean: Signal
    noise: NDArray[np.float64]
    target_snr_db: float
    seed: int

    def __post_init__(self) -> None:
        if self.samples.shape != self.clean.samples.shape:
            raise InvalidParameterError("Noisy samples must match the clean signal length")
