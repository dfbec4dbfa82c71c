"""Benchmark runner - methods x signals x SNRs x repetitions."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from zerobench.core.config import BenchmarkConfig, SignalRef
from zerobench.core.errors import InvalidParameterError
from zerobench.core.rng import derive_seed
from zerobench.detection.ensemble import NULL_ENSEMBLES
from zerobench.methods.base import MethodAdapter, param_set_id
from zerobench.methods.loader import load_method
from zerobench.methods.metrics import Metric, load_metric
from zerobench.signals.bank import make_signal
from zerobench.signals.base import NoisySignal, Signal
from zerobench.signals.noise import add_noise_at_snr

logger = logging.getLogger(__name__)

# Key of the per-call method seed stream, distinct from the noise stream of the same cell.
METHOD_STREAM = 1


@dataclass(frozen=True)
class ResultRow:
    """One metric value of one method call."""

    method: str
    param_set_id: str
    signal: str
    snr_db: float
    repetition: int
    metric: str
    value: float
    runtime_s: float
    error: str | None = None

    def key(self) -> tuple[str, str, str, float, int, str]:
        return (
            self.method,
            self.param_set_id,
            self.signal,
            self.snr_db,
            self.repetition,
            self.metric,
        )


@dataclass
class ResultsTable:
    """Benchmark results, one row per (method, params, signal, snr, repetition, metric)."""

    rows: list[ResultRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def sorted(self) -> "ResultsTable":
        return ResultsTable(rows=sorted(self.rows, key=ResultRow.key))

    @property
    def errors(self) -> list[ResultRow]:
        return [row for row in self.rows if row.error is not None]


@dataclass(frozen=True)
class MethodRun:
    """An adapter paired with one of its configured parameter sets."""

    adapter: MethodAdapter
    params: dict[str, Any]

    @property
    def param_set_id(self) -> str:
        return param_set_id(self.params)


@dataclass(frozen=True)
class Cell:
    """One (signal, snr, repetition) realization shared by every method."""

    signal_index: int
    snr_index: int
    repetition: int  # 1-based


def signal_label(ref: SignalRef) -> str:
    """Catalog name, suffixed with its parameter overrides when there are any."""
    if not ref.params:
        return ref.name
    return f"{ref.name}({param_set_id(ref.params)})"


class BenchmarkRunner:
    """Executes a benchmark configuration.

    Cells are distributed over a thread pool of `cfg.workers` threads; adapters flagged
    serial-only run afterwards in the calling thread. The noise of cell (i, j, r) is seeded by
    derive_seed(base_seed, i, j, r), so results do not depend on scheduling.
    """

    def __init__(
        self,
        cfg: BenchmarkConfig,
        methods: list[MethodAdapter],
        metrics: list[Metric],
    ) -> None:
        """Initialize runner.

        Args:
            cfg: Benchmark configuration; supplies the parameter sets of each method.
            methods: Adapters to run.
            metrics: Metrics computed on every output.

        Raises:
            InvalidParameterError: If no method or no metric is given.
        """
        if not methods:
            raise InvalidParameterError("A benchmark needs at least one method")
        if not metrics:
            raise InvalidParameterError("A benchmark needs at least one metric")
        self.cfg = cfg
        self.metrics = metrics
        self.runs = [
            MethodRun(adapter, dict(params))
            for adapter in methods
            for params in cfg.methods.get(adapter.name) or [{}]
        ]
        self.signals: list[Signal] = [make_signal(s.name, cfg.N, s.params) for s in cfg.signals]
        self.labels = [signal_label(s) for s in cfg.signals]

    def cells(self) -> list[Cell]:
        return [
            Cell(i, j, r)
            for i in range(len(self.signals))
            for j in range(len(self.cfg.snr_db))
            for r in range(1, self.cfg.repetitions + 1)
        ]

    def realize(self, cell: Cell) -> NoisySignal:
        """Noisy input of a cell; identical for every method."""
        seed = derive_seed(self.cfg.base_seed, cell.signal_index, cell.snr_index, cell.repetition)
        return add_noise_at_snr(
            self.signals[cell.signal_index], self.cfg.snr_db[cell.snr_index], seed
        )

    def run(self) -> ResultsTable:
        """Run every cell and return the sorted table."""
        cells = self.cells()
        concurrent = [r for r in self.runs if not r.adapter.serial_only]
        serial = [r for r in self.runs if r.adapter.serial_only]
        workers = min(self.cfg.workers, max(len(cells), 1))
        logger.info(
            f"Running {len(self.runs)} method configurations on {len(cells)} cells "
            f"with {workers} workers"
        )
        start = time.perf_counter()

        rows: list[ResultRow] = []
        # Cells waiting on a missing null ensemble block while it is simulated on all workers.
        previous_workers, NULL_ENSEMBLES.workers = NULL_ENSEMBLES.workers, self.cfg.workers
        try:
            if concurrent:
                if workers > 1:
                    with ThreadPoolExecutor(max_workers=workers) as pool:
                        for cell_rows in pool.map(lambda c: self._run_cell(c, concurrent), cells):
                            rows.extend(cell_rows)
                else:
                    for cell in cells:
                        rows.extend(self._run_cell(cell, concurrent))
            if serial:
                for cell in cells:
                    rows.extend(self._run_cell(cell, serial))
        finally:
            NULL_ENSEMBLES.workers = previous_workers

        table = ResultsTable(rows=rows).sorted()
        logger.info(
            f"Benchmark complete: {len(table)} rows, {len(table.errors)} errors, "
            f"{time.perf_counter() - start:.1f}s"
        )
        return table

    def _run_cell(self, cell: Cell, runs: list[MethodRun]) -> list[ResultRow]:
        noisy = self.realize(cell)
        method_seed = derive_seed(
            self.cfg.base_seed, cell.signal_index, cell.snr_index, cell.repetition, METHOD_STREAM
        )
        rows: list[ResultRow] = []
        for method_run in runs:
            rows.extend(self._run_method(cell, noisy, method_run, method_seed))
        return rows

    def _run_method(
        self, cell: Cell, noisy: NoisySignal, method_run: MethodRun, seed: int
    ) -> list[ResultRow]:
        adapter = method_run.adapter
        error: str | None = None
        output: Any = None
        # Adapters get a private copy of the shared realization.
        samples = np.array(noisy.samples, copy=True)
        started = time.perf_counter()
        try:
            output = adapter(samples, noisy.clean, method_run.params, seed)
        except Exception as e:
            error = f"{type(e).__name__}: {e}"
            logger.warning(
                f"Method {adapter.name} [{method_run.param_set_id}] failed on "
                f"{self.labels[cell.signal_index]} at {noisy.target_snr_db} dB, "
                f"repetition {cell.repetition}: {error}"
            )
        runtime = time.perf_counter() - started

        rows = []
        for metric in self.metrics:
            value = math.nan
            metric_error = error
            if error is None:
                try:
                    value = metric(noisy.clean, output, noisy.noise)
                except Exception as e:
                    metric_error = f"{type(e).__name__}: {e}"
                    logger.warning(
                        f"Metric {metric.name} failed for {adapter.name}: {metric_error}"
                    )
            rows.append(
                ResultRow(
                    method=adapter.name,
                    param_set_id=method_run.param_set_id,
                    signal=self.labels[cell.signal_index],
                    snr_db=noisy.target_snr_db,
                    repetition=cell.repetition,
                    metric=metric.name,
                    value=value,
                    runtime_s=runtime,
                    error=metric_error,
                )
            )
        logger.debug(
            f"{adapter.name} [{method_run.param_set_id}] on {self.labels[cell.signal_index]} "
            f"{noisy.target_snr_db} dB rep {cell.repetition}: {runtime:.3f}s"
        )
        return rows


def run_benchmark(
    cfg: BenchmarkConfig,
    methods: list[MethodAdapter] | None = None,
    metrics: list[Metric] | None = None,
) -> ResultsTable:
    """Run a benchmark.

    Args:
        cfg: Benchmark configuration.
        methods: Adapters to run; defaults to the configured method names.
        metrics: Metrics; defaults to the configured (or task default) metric names.

    Returns:
        Results sorted by (method, param_set_id, signal, snr_db, repetition, metric).
    """
    if methods is None:
        methods = [load_method(name) for name in cfg.methods]
    if metrics is None:
        metrics = [load_metric(name) for name in cfg.metric_names()]
    return BenchmarkRunner(cfg, methods, metrics).run()
