"""Registry of benchmark metrics.

A metric maps (clean signal, method output, noise realization) to a real value.
"""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import UnknownNameError
from zerobench.core.metrics import corr_coeff, qrf
from zerobench.methods.base import Task
from zerobench.signals.base import Signal

MetricFn = Callable[[Signal, Any, NDArray[np.float64]], float]


@dataclass(frozen=True)
class Metric:
    """A named metric applicable to one task."""

    name: str
    task: Task
    fn: MetricFn

    def __call__(self, clean: Signal, output: Any, noise: NDArray[np.float64]) -> float:
        return float(self.fn(clean, output, noise))


def _qrf(clean: Signal, output: Any, noise: NDArray[np.float64]) -> float:
    return qrf(clean.samples, output)


def _cc(clean: Signal, output: Any, noise: NDArray[np.float64]) -> float:
    return corr_coeff(clean.samples, output)


def _cc_modulus(clean: Signal, output: Any, noise: NDArray[np.float64]) -> float:
    return corr_coeff(clean.samples, output, modulus=True)


def _detected(clean: Signal, output: Any, noise: NDArray[np.float64]) -> float:
    return 1.0 if output else 0.0


BUILTIN_METRICS: dict[str, Metric] = {
    "qrf": Metric("qrf", Task.DENOISING, _qrf),
    "cc": Metric("cc", Task.DENOISING, _cc),
    "cc_modulus": Metric("cc_modulus", Task.DENOISING, _cc_modulus),
    "detected": Metric("detected", Task.DETECTION, _detected),
}

DEFAULT_METRICS: dict[Task, list[str]] = {
    Task.DENOISING: ["qrf"],
    Task.DETECTION: ["detected"],
}


def load_metric(name: str) -> Metric:
    """Look up a registered metric.

    Raises:
        UnknownNameError: If no metric has this name.
    """
    if name not in BUILTIN_METRICS:
        raise UnknownNameError("metric", name, list(BUILTIN_METRICS))
    return BUILTIN_METRICS[name]
