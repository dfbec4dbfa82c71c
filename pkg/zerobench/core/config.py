"""Benchmark configuration - YAML to BenchmarkConfig."""

import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field, ValidationError

from zerobench.core.errors import InvalidParameterError, UnknownNameError, ZerobenchError
from zerobench.methods.base import Task
from zerobench.methods.loader import load_method
from zerobench.methods.metrics import DEFAULT_METRICS, load_metric
from zerobench.signals.bank import SIGNAL_CATALOG, make_signal

WORKERS_ENV = "ZEROBENCH_WORKERS"


class ConfigError(ZerobenchError):
    """Error loading or parsing a benchmark configuration."""

    pass


class SignalRef(BaseModel):
    """A catalog signal with optional parameter overrides."""

    name: str
    params: dict[str, Any] = Field(default_factory=dict)


class BenchmarkConfig(BaseModel):
    """A full benchmark: signals x SNRs x repetitions for each method parameter set."""

    task: Task
    signals: list[SignalRef] = Field(min_length=1)
    N: int = Field(default=512, ge=64)
    snr_db: list[float] = Field(min_length=1)
    repetitions: int = Field(default=1, ge=1)
    base_seed: int = Field(default=0, ge=0, lt=2**64)
    workers: int = Field(default=1, ge=1)
    methods: dict[str, list[dict[str, Any]]] = Field(min_length=1)
    metrics: list[str] = Field(default_factory=list)
    output: Path | None = None

    @property
    def signal_names(self) -> list[str]:
        return [s.name for s in self.signals]

    def metric_names(self) -> list[str]:
        """Configured metrics, or the task's defaults when none are given."""
        return list(self.metrics) or list(DEFAULT_METRICS[self.task])


def load_config(path: Path, environ: Mapping[str, str] | None = None) -> BenchmarkConfig:
    """Load a benchmark configuration from a YAML file.

    The ZEROBENCH_WORKERS environment variable overrides the `workers` key.

    Args:
        path: Path to the YAML file.
        environ: Environment to read overrides from; defaults to os.environ.

    Returns:
        Parsed BenchmarkConfig.

    Raises:
        ConfigError: If the file cannot be read or is invalid.
    """
    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML: {e}") from e
    except FileNotFoundError as e:
        raise ConfigError(f"File not found: {path}") from e

    if not isinstance(raw, dict):
        raise ConfigError("Config must be a YAML mapping")

    env = os.environ if environ is None else environ
    if env.get(WORKERS_ENV):
        try:
            raw["workers"] = int(env[WORKERS_ENV])
        except ValueError as e:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got '{env[WORKERS_ENV]}'") from e

    return parse_config(raw)


def _parameter_sets(method: str, value: Any) -> list[dict[str, Any]]:
    # `name:` alone or `name: {}` run the defaults; a mapping is a single set.
    if value is None:
        return [{}]
    if isinstance(value, dict):
        return [value]
    if isinstance(value, list) and all(isinstance(p, dict) for p in value):
        return value or [{}]
    raise ConfigError(f"Parameters of method '{method}' must be a mapping or a list of mappings")


def parse_config(raw: dict[str, Any]) -> BenchmarkConfig:
    """Parse a raw dictionary into a BenchmarkConfig.

    Signals may be given as bare names or as `{name, params}` mappings; methods map to a
    parameter set, a list of them, or nothing for the defaults.

    Raises:
        ConfigError: If required fields are missing or invalid.
    """
    data = dict(raw)
    signals = data.get("signals", [])
    if isinstance(signals, list):
        data["signals"] = [{"name": s} if isinstance(s, str) else s for s in signals]
    methods = data.get("methods")
    if isinstance(methods, list):
        methods = {name: None for name in methods}
    if isinstance(methods, dict):
        data["methods"] = {name: _parameter_sets(name, v) for name, v in methods.items()}
    if isinstance(data.get("snr_db"), int | float):
        data["snr_db"] = [data["snr_db"]]

    try:
        return BenchmarkConfig.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"Invalid config: {problems}") from e


def validate_config(cfg: BenchmarkConfig) -> list[str]:
    """Check names and parameters against the registries.

    Returns:
        List of validation error messages (empty if valid).
    """
    errors: list[str] = []

    for ref in cfg.signals:
        if ref.name not in SIGNAL_CATALOG:
            errors.append(f"Unknown signal '{ref.name}'")
            continue
        try:
            make_signal(ref.name, cfg.N, ref.params)
        except InvalidParameterError as e:
            errors.append(str(e))

    for name, parameter_sets in cfg.methods.items():
        try:
            adapter = load_method(name)
        except UnknownNameError as e:
            errors.append(str(e))
            continue
        if adapter.task != cfg.task:
            errors.append(f"Method '{name}' is a {adapter.task.value} method")
        for params in parameter_sets:
            try:
                adapter.resolve(params)
            except InvalidParameterError as e:
                errors.append(str(e))

    for metric_name in cfg.metric_names():
        try:
            metric = load_metric(metric_name)
        except UnknownNameError as e:
            errors.append(str(e))
            continue
        if metric.task != cfg.task:
            errors.append(f"Metric '{metric_name}' does not apply to {cfg.task.value}")

    return errors
