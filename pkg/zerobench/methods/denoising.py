"""Built-in denoising methods."""

from typing import Any

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.denoise.empty_space import empty_space_denoise
from zerobench.denoise.ridges import sst_rd_denoise
from zerobench.denoise.thresholding import GARROTE_C, HARD_C, threshold_denoise
from zerobench.denoise.triangulation import dt_denoise
from zerobench.methods.base import MethodAdapter, Task
from zerobench.signals.base import Signal


def ensemble_seed(params: dict[str, Any], seed: int) -> int:
    """Seed of the null ensemble: the fixed `ensemble_seed`, or the call seed when it is None.

    A fixed seed lets every call reuse one cached ensemble.
    """
    fixed = params.get("ensemble_seed")
    return seed if fixed is None else int(fixed)


def _hard(noisy: NDArray[np.float64], clean: Signal, params: dict[str, Any], seed: int) -> Any:
    return threshold_denoise(noisy, "hard", c=float(params["c"]))[0]


def _garrote(noisy: NDArray[np.float64], clean: Signal, params: dict[str, Any], seed: int) -> Any:
    return threshold_denoise(noisy, "garrote", c=float(params["c"]))[0]


def _empty_space(
    noisy: NDArray[np.float64], clean: Signal, params: dict[str, Any], seed: int
) -> Any:
    estimate, _ = empty_space_denoise(
        noisy,
        r0=params["r0"],
        m=int(params["m"]),
        seed=ensemble_seed(params, seed),
        within_window=bool(params["within_window"]),
    )
    return estimate


def _delaunay(noisy: NDArray[np.float64], clean: Signal, params: dict[str, Any], seed: int) -> Any:
    estimate, _ = dt_denoise(
        noisy,
        l_max=params["l_max"],
        m=int(params["m"]),
        seed=ensemble_seed(params, seed),
        exclude_border=bool(params["exclude_border"]),
    )
    return estimate


def _sst_rd(noisy: NDArray[np.float64], clean: Signal, params: dict[str, Any], seed: int) -> Any:
    J = params["J"]
    if J == "auto":
        # Number of components taken from the ground truth, one ridge when it is unknown.
        J = max(clean.component_count, 1)
    elif isinstance(J, str):
        raise InvalidParameterError(f"J must be an integer or 'auto', got '{J}'")
    estimate, _ = sst_rd_denoise(noisy, J=int(J), epsilon=params["epsilon"], mu=float(params["mu"]))
    return estimate


T_HARD = MethodAdapter(
    name="t_hard",
    task=Task.DENOISING,
    fn=_hard,
    defaults={"c": HARD_C},
    description="Hard thresholding of the STFT at c * noise std",
)

T_SOFT = MethodAdapter(
    name="t_soft",
    task=Task.DENOISING,
    fn=_garrote,
    defaults={"c": GARROTE_C},
    description="Garrote (soft) thresholding of the STFT",
)

EMPTY_SPACE = MethodAdapter(
    name="empty_space",
    task=Task.DENOISING,
    fn=_empty_space,
    defaults={"r0": "auto", "m": 199, "ensemble_seed": 0, "within_window": False},
    description="Union of zero-free balls of radius r0",
)

DELAUNAY = MethodAdapter(
    name="delaunay",
    task=Task.DENOISING,
    fn=_delaunay,
    defaults={"l_max": "auto", "m": 199, "ensemble_seed": 0, "exclude_border": False},
    description="Delaunay triangles of the zeros with an edge longer than l_max",
)

SST_RD = MethodAdapter(
    name="sst_rd",
    task=Task.DENOISING,
    fn=_sst_rd,
    defaults={"J": "auto", "epsilon": "auto", "mu": 0.5},
    description="Synchrosqueezing with ridge extraction and mode reconstruction",
)
