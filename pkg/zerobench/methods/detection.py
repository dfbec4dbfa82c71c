"""Built-in detection tests."""

from typing import Any

import numpy as np
from numpy.typing import NDArray

from zerobench.detection.adaptive import run_test
from zerobench.detection.montecarlo import TestConfig, TestKind
from zerobench.methods.base import MethodAdapter, MethodFn, Task
from zerobench.methods.denoising import ensemble_seed
from zerobench.signals.base import Signal

COMMON_DEFAULTS: dict[str, Any] = {
    "statistic": "F",
    "alpha": 0.05,
    "m": 199,
    "ensemble_seed": 0,
}


def build_test_config(params: dict[str, Any]) -> TestConfig:
    """Build the test configuration from a resolved parameter set."""
    fields: dict[str, Any] = {"statistic_kind": params["statistic"], "alpha": params["alpha"]}
    for key in ("r_min", "r_mc", "p_norm", "k_rank"):
        if key in params:
            fields[key] = params[key]
    if "interval" in params:
        fields["interval"] = tuple(params["interval"])
    return TestConfig(**fields)


def _runner(kind: TestKind) -> MethodFn:
    def decide(
        noisy: NDArray[np.float64], clean: Signal, params: dict[str, Any], seed: int
    ) -> bool:
        cfg = build_test_config(params)
        seed = ensemble_seed(params, seed)
        return run_test(noisy, kind, cfg, m=int(params["m"]), seed=seed).reject

    return decide


ENVELOPE_TEST = MethodAdapter(
    name="envelope_test",
    task=Task.DETECTION,
    fn=_runner(TestKind.ENVELOPE),
    defaults={**COMMON_DEFAULTS, "r_min": 0.0, "r_mc": None, "p_norm": 2.0, "k_rank": None},
    description="p-norm deviation envelope test on [r_min, r_mc]",
)

MAD_TEST = MethodAdapter(
    name="mad_test",
    task=Task.DETECTION,
    fn=_runner(TestKind.MAD),
    defaults={**COMMON_DEFAULTS, "r_min": 0.0, "k_rank": None},
    description="Maximum absolute deviation test",
)

RANK_TEST = MethodAdapter(
    name="rank_test",
    task=Task.DETECTION,
    fn=_runner(TestKind.RANK),
    defaults={**COMMON_DEFAULTS, "interval": [0.65, 1.05]},
    description="Global rank envelope test, conservative decision",
)
