"""Method adapters, registries and metrics."""

from zerobench.methods.base import MethodAdapter, MethodContractError, Task, param_set_id
from zerobench.methods.loader import BUILTIN_METHODS, available_methods, load_method
from zerobench.methods.metrics import BUILTIN_METRICS, DEFAULT_METRICS, Metric, load_metric

__all__ = [
    "BUILTIN_METHODS",
    "BUILTIN_METRICS",
    "DEFAULT_METRICS",
    "Metric",
    "MethodAdapter",
    "MethodContractError",
    "Task",
    "available_methods",
    "load_method",
    "load_metric",
    "param_set_id",
]
