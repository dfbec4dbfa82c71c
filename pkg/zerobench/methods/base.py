"""Method adapter interface."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Protocol

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError, ZerobenchError
from zerobench.signals.base import Signal


class Task(str, Enum):
    """Kind of output a method produces."""

    DENOISING = "denoising"  # estimate with the input's length
    DETECTION = "detection"  # single boolean


class MethodContractError(ZerobenchError):
    """A method returned output of the wrong kind for its task."""

    pass


class MethodFn(Protocol):
    """Callable behind an adapter; must be a pure function of its arguments."""

    def __call__(
        self, noisy: NDArray[np.float64], clean: Signal, params: dict[str, Any], seed: int
    ) -> Any: ...


@dataclass(frozen=True)
class MethodAdapter:
    """A registered method.

    `defaults` lists every accepted parameter; a parameter set overrides a subset of them.
    Adapters flagged `serial_only` are never invoked concurrently.
    """

    name: str
    task: Task
    fn: MethodFn
    defaults: dict[str, Any] = field(default_factory=dict)
    description: str = ""
    serial_only: bool = False

    def resolve(self, params: Mapping[str, Any] | None = None) -> dict[str, Any]:
        """Merge a parameter set over the defaults.

        Raises:
            InvalidParameterError: If a parameter is not accepted by the method.
        """
        overrides = dict(params or {})
        unknown = set(overrides) - set(self.defaults)
        if unknown:
            raise InvalidParameterError(
                f"Unknown parameters for method '{self.name}': {sorted(unknown)}"
            )
        return {**self.defaults, **overrides}

    def __call__(
        self,
        noisy: NDArray[np.float64],
        clean: Signal,
        params: Mapping[str, Any] | None,
        seed: int,
    ) -> Any:
        output = self.fn(noisy, clean, self.resolve(params), seed)
        return self.check_output(noisy, output)

    def check_output(self, noisy: NDArray[np.float64], output: Any) -> Any:
        if self.task == Task.DETECTION:
            if not isinstance(output, bool | np.bool_):
                raise MethodContractError(
                    f"Detection method '{self.name}' must return a boolean, got {type(output)}"
                )
            return bool(output)
        estimate = np.asarray(output)
        if estimate.shape != noisy.shape:
            raise MethodContractError(
                f"Denoising method '{self.name}' returned shape {estimate.shape}, "
                f"expected {noisy.shape}"
            )
        return estimate


def param_set_id(params: Mapping[str, Any] | None) -> str:
    """Stable identifier of a parameter set: sorted "key=value" pairs, or "default"."""
    if not params:
        return "default"
    return ";".join(f"{key}={params[key]}" for key in sorted(params))
