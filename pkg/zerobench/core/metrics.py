"""Performance metrics and confidence intervals."""

import math
from collections.abc import Sequence

import numpy as np
import scipy.optimize
import scipy.special
import scipy.stats
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError

QRF_CAP_DB = 300.0
BISECTION_TOL = 1e-10


def qrf(clean: NDArray[np.generic], estimate: NDArray[np.generic]) -> float:
    """Quality reconstruction factor 10 log10(|s|^2 / |s - s_hat|^2) in dB, capped at 300.

    Raises:
        InvalidParameterError: On length mismatch or a zero-energy reference.
    """
    s = np.asarray(clean)
    s_hat = np.asarray(estimate)
    if s.shape != s_hat.shape:
        raise InvalidParameterError(f"Length mismatch: {s.shape} vs {s_hat.shape}")
    signal_energy = float(np.sum(np.abs(s) ** 2))
    if signal_energy == 0:
        raise InvalidParameterError("QRF needs a reference with nonzero energy")
    error_energy = float(np.sum(np.abs(s - s_hat) ** 2))
    if error_energy == 0:
        return QRF_CAP_DB
    return min(QRF_CAP_DB, 10.0 * math.log10(signal_energy / error_energy))


def corr_coeff(
    clean: NDArray[np.generic], estimate: NDArray[np.generic], modulus: bool = False
) -> float:
    """Correlation coefficient Re<s, s_hat> / (|s| |s_hat|).

    With `modulus=True` the modulus of the Hermitian inner product is used instead of its real
    part. A zero-norm estimate yields 0.
    """
    s = np.asarray(clean).astype(np.complex128)
    s_hat = np.asarray(estimate).astype(np.complex128)
    if s.shape != s_hat.shape:
        raise InvalidParameterError(f"Length mismatch: {s.shape} vs {s_hat.shape}")
    norms = float(np.linalg.norm(s) * np.linalg.norm(s_hat))
    if norms == 0:
        return 0.0
    inner = complex(np.vdot(s, s_hat))
    value = abs(inner) if modulus else inner.real
    return float(np.clip(value / norms, -1.0, 1.0))


def detection_power(outcomes: Sequence[bool]) -> float:
    """Fraction of rejections."""
    if len(outcomes) == 0:
        raise InvalidParameterError("Detection power needs at least one outcome")
    return sum(bool(o) for o in outcomes) / len(outcomes)


def _beta_quantile(q: float, a: float, b: float) -> float:
    return float(
        scipy.optimize.bisect(
            lambda x: scipy.special.betainc(a, b, x) - q, 0.0, 1.0, xtol=BISECTION_TOL
        )
    )


def clopper_pearson(successes: int, trials: int, confidence: float) -> tuple[float, float]:
    """Exact binomial confidence interval from Beta quantiles.

    Raises:
        InvalidParameterError: If the counts or the confidence level are out of range.
    """
    if trials < 1 or not 0 <= successes <= trials:
        raise InvalidParameterError(f"Invalid counts: {successes} of {trials}")
    if not 0 < confidence < 1:
        raise InvalidParameterError(f"Confidence must lie in (0, 1), got {confidence}")
    tail = (1.0 - confidence) / 2.0
    lo = 0.0 if successes == 0 else _beta_quantile(tail, successes, trials - successes + 1)
    hi = 1.0 if successes == trials else _beta_quantile(1 - tail, successes + 1, trials - successes)
    return lo, hi


def bonferroni_adjust(confidence: float, num_comparisons: int) -> float:
    """Per-comparison confidence keeping the family-wise level."""
    if num_comparisons < 1:
        raise InvalidParameterError(f"Need at least one comparison, got {num_comparisons}")
    return 1.0 - (1.0 - confidence) / num_comparisons


def t_interval(values: Sequence[float], confidence: float) -> tuple[float, float]:
    """Student-t interval for the mean; degenerate (mean, mean) for fewer than two values."""
    data = np.asarray(values, dtype=np.float64)
    mean = float(data.mean())
    if data.size < 2:
        return mean, mean
    half = float(
        scipy.stats.t.ppf(0.5 + confidence / 2.0, data.size - 1)
        * data.std(ddof=1)
        / math.sqrt(data.size)
    )
    return mean - half, mean + half
