"""Ridge extraction on synchrosqueezed transforms and mode reconstruction."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.tf.reassign import reassignment_operators, synchrosqueeze
from zerobench.tf.stft import StftParams, analytic_signal, positive_band

logger = logging.getLogger(__name__)

RIDGE_MU = 0.5
ENERGY_FLOOR = 1e-12


@dataclass(frozen=True)
class RidgeSet:
    """J ridges, each a frequency bin per time index."""

    ridges: NDArray[np.int64]

    @property
    def J(self) -> int:
        return int(self.ridges.shape[0])


def _best_path(energy: NDArray[np.float64], mu: float) -> NDArray[np.int64]:
    """Viterbi path maximizing sum energy[n, k_n] - mu * sum (k_{n+1} - k_n)^2."""
    N, K = energy.shape
    bins = np.arange(K)
    penalty = mu * (bins[:, None] - bins[None, :]).astype(np.float64) ** 2
    back = np.zeros((N, K), dtype=np.int64)
    score = energy[0].copy()
    for n in range(1, N):
        candidates = score[None, :] - penalty
        back[n] = np.argmax(candidates, axis=1)
        score = energy[n] + candidates[bins, back[n]]
    path = np.empty(N, dtype=np.int64)
    path[-1] = int(np.argmax(score))
    for n in range(N - 1, 0, -1):
        path[n - 1] = back[n, path[n]]
    return path


def extract_ridges(
    sst: NDArray[np.complex128],
    J: int,
    mu: float = RIDGE_MU,
    clear_half_width: int | None = None,
) -> RidgeSet:
    """Extract J ridges one after the other by dynamic programming.

    Each ridge maximizes sum_n log(|T[n, k_n]|^2 + floor) - mu sum_n (k_{n+1} - k_n)^2, with
    floor = 1e-12 max |T|^2. After each pass the bins within `clear_half_width` of the ridge are
    zeroed.

    Args:
        sst: Synchrosqueezed coefficients, N x K.
        J: Number of ridges.
        mu: Penalty per squared bin jump.
        clear_half_width: Half width of the cleared band; defaults to round(sqrt(K)).

    Returns:
        The ridges in extraction order.

    Raises:
        InvalidParameterError: If J < 1 or mu < 0.
    """
    if J < 1:
        raise InvalidParameterError(f"Need at least one ridge, got J={J}")
    if mu < 0:
        raise InvalidParameterError(f"Jump penalty must be nonnegative, got {mu}")
    N, K = sst.shape
    width = round(math.sqrt(K)) if clear_half_width is None else clear_half_width

    power = np.abs(sst) ** 2
    ridges = np.empty((J, N), dtype=np.int64)
    rows = np.arange(N)
    for j in range(J):
        floor = max(ENERGY_FLOOR * float(power.max()), np.finfo(np.float64).tiny)
        ridges[j] = _best_path(np.log(power + floor), mu)
        for offset in range(-width, width + 1):
            cols = ridges[j] + offset
            valid = (cols >= 0) & (cols < K)
            power[rows[valid], cols[valid]] = 0.0
    return RidgeSet(ridges=ridges)


def sst_rd_denoise(
    x: NDArray[np.generic],
    J: int = 1,
    epsilon: int | str = "auto",
    params: StftParams | None = None,
    mu: float = RIDGE_MU,
) -> tuple[NDArray[np.generic], list[NDArray[np.generic]]]:
    """Synchrosqueezing followed by ridge extraction and band-limited mode reconstruction.

    s_j[n] = 1 / (K g(0)) * sum over |q - Omega_j[n]| <= epsilon / 2 of T[n, q], and the
    estimate is the sum of the modes. "auto" epsilon is round(K / T).

    Returns:
        (estimate, [mode_1, ..., mode_J]); real when x is real.
    """
    samples = np.asarray(x)
    N = samples.shape[0]
    real_input = not np.iscomplexobj(samples)
    params = params or StftParams.default(N)
    if epsilon == "auto":
        width = round(params.K / params.T)
    elif isinstance(epsilon, str):
        raise InvalidParameterError(f"epsilon must be an integer or 'auto', got '{epsilon}'")
    else:
        width = int(epsilon)
    if width < 0:
        raise InvalidParameterError(f"epsilon must be nonnegative, got {width}")

    maps = reassignment_operators(analytic_signal(samples), params.window(N), params.K)
    sst = synchrosqueeze(maps.grid, maps.nu_hat)
    band = positive_band(params.K) if real_input else params.K
    ridges = extract_ridges(sst[:, :band], J, mu, clear_half_width=width)
    logger.debug(f"Extracted {ridges.J} ridges with epsilon={width}")

    scale = params.K * maps.grid.center
    bins = np.arange(params.K)[None, :]
    modes: list[NDArray[np.generic]] = []
    for ridge in ridges.ridges:
        center = ridge[:, None].astype(np.float64)
        support = (bins >= center - width / 2.0) & (bins <= center + width / 2.0)
        mode = np.sum(np.where(support, sst, 0), axis=1) / scale
        modes.append(mode.real if real_input else mode)
    estimate = np.sum(np.stack(modes), axis=0)
    return estimate, modes
