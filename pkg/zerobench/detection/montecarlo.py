"""Global Monte Carlo envelope tests on summary curves."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field
from scipy.stats import rankdata

from zerobench.core.errors import InvalidParameterError
from zerobench.detection.ensemble import NullEnsemble
from zerobench.spatial.summary import CurveKind, SummaryCurve


class TestKind(str, Enum):
    """Available global tests."""

    __test__ = False

    ENVELOPE = "envelope"  # p-norm deviation on [r_min, r_mc]
    MAD = "mad"  # supremum deviation on [r_min, r_max]
    RANK = "rank"  # global rank envelope on the interval


class TestConfig(BaseModel):
    """Parameters of the Monte Carlo tests."""

    __test__ = False

    statistic_kind: CurveKind = CurveKind.F
    r_min: float = 0.0
    r_mc: float | None = None  # None means the largest radius
    p_norm: float = Field(default=2.0, gt=0)
    alpha: float = Field(default=0.05, gt=0, lt=1)
    k_rank: int | None = Field(default=None, ge=1)
    interval: tuple[float, float] = (0.65, 1.05)

    def rank_for(self, m: int) -> int:
        """k such that alpha = k / (m + 1), or the explicit `k_rank`."""
        if self.k_rank is not None:
            k = self.k_rank
        else:
            exact = self.alpha * (m + 1)
            k = round(exact)
            if abs(exact - k) > 1e-9:
                raise InvalidParameterError(
                    f"alpha * (m + 1) must be an integer (alpha={self.alpha}, m={m})"
                )
        if not 1 <= k <= m:
            raise InvalidParameterError(f"Test rank k={k} must lie in [1, m={m}]")
        return k


@dataclass(frozen=True)
class TestOutcome:
    """Decision and statistics of one test."""

    __test__ = False

    reject: bool
    p_minus: float
    p_plus: float
    t0: float | None = None
    threshold: float | None = None
    rank0: int | None = None
    liberal_reject: bool | None = None

    def to_dict(self) -> dict[str, float | int | bool | None]:
        """Convert to dictionary."""
        return {
            "reject": self.reject,
            "p_minus": self.p_minus,
            "p_plus": self.p_plus,
            "t0": self.t0,
            "threshold": self.threshold,
            "rank0": self.rank0,
            "liberal_reject": self.liberal_reject,
        }


def stacked_curves(
    observed: SummaryCurve, ensemble: NullEnsemble, lo: float, hi: float
) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
    """Observed curve (row 0) and ensemble restricted to defined radii in [lo, hi].

    Returns:
        The (m + 1, R') matrix and the boolean radius selection it was cut with.

    Raises:
        InvalidParameterError: On grid/kind mismatch or when no radius survives.
    """
    if observed.kind != ensemble.kind:
        raise InvalidParameterError(
            f"Observed curve kind {observed.kind.value} differs from ensemble {ensemble.kind.value}"
        )
    if observed.radii.key() != ensemble.radii.key():
        raise InvalidParameterError("Observed curve and ensemble use different radius grids")
    curves = np.vstack([observed.values[None, :], ensemble.matrix()])
    selection = ensemble.radii.within(lo, hi) & np.all(np.isfinite(curves), axis=0)
    if not selection.any():
        raise InvalidParameterError(f"No defined radius in [{lo}, {hi}]")
    return curves[:, selection], selection


def deviation_statistics(
    curves: NDArray[np.float64], weights: NDArray[np.float64], p: float
) -> NDArray[np.float64]:
    """t_j = (sum_r |S_j - mean|^p dr)^(1/p); the supremum when p is infinite."""
    deviation = np.abs(curves - curves.mean(axis=0))
    if math.isinf(p):
        return np.asarray(deviation.max(axis=1), dtype=np.float64)
    return np.asarray(np.sum(deviation**p * weights, axis=1) ** (1.0 / p), dtype=np.float64)


def envelope_test(
    observed: SummaryCurve, ensemble: NullEnsemble, cfg: TestConfig
) -> TestOutcome:
    """Deviation test: reject when t0 >= t_(k), the k-th largest simulated statistic.

    The mean curve includes the observation. The returned p-value is the usual Monte Carlo
    rank p-value #{j : t_j >= t0} / (m + 1), counting the observation itself.
    """
    r_max = ensemble.radii.r_max
    r_mc = r_max if cfg.r_mc is None else cfg.r_mc
    if r_mc > r_max:
        raise InvalidParameterError(f"r_mc={r_mc} exceeds the largest radius {r_max}")
    k = cfg.rank_for(ensemble.m)

    curves, selection = stacked_curves(observed, ensemble, cfg.r_min, r_mc)
    stats = deviation_statistics(curves, ensemble.radii.weights()[selection], cfg.p_norm)
    t0 = float(stats[0])
    threshold = float(np.sort(stats[1:])[::-1][k - 1])
    p_value = float(np.count_nonzero(stats >= t0)) / (ensemble.m + 1)
    reject = t0 >= threshold
    return TestOutcome(
        reject=bool(reject),
        p_minus=p_value,
        p_plus=p_value,
        t0=t0,
        threshold=threshold,
        liberal_reject=bool(reject),
    )


def mad_test(observed: SummaryCurve, ensemble: NullEnsemble, cfg: TestConfig) -> TestOutcome:
    """Maximum absolute deviation test over [r_min, r_max]."""
    return envelope_test(
        observed, ensemble, cfg.model_copy(update={"p_norm": math.inf, "r_mc": None})
    )


def curve_ranks(curves: NDArray[np.float64]) -> NDArray[np.int64]:
    """Extreme rank of each row: the deepest k-th envelope containing it at every radius."""
    at_most = rankdata(curves, method="max", axis=0)
    at_least = rankdata(-curves, method="max", axis=0)
    pointwise = np.minimum(at_most, at_least)
    return np.asarray(pointwise.min(axis=1), dtype=np.int64)


def rank_envelope_test(
    observed: SummaryCurve, ensemble: NullEnsemble, cfg: TestConfig
) -> TestOutcome:
    """Global rank envelope test on `cfg.interval`.

    p_minus counts simulations ranked strictly more extreme than the observation, p_plus those
    ranked at least as extreme plus the observation itself. `reject` is the conservative
    decision p_plus < alpha.
    """
    lo, hi = cfg.interval
    radii = ensemble.radii.radii
    if lo > hi or hi < radii[0] or lo > radii[-1]:
        raise InvalidParameterError(f"Interval [{lo}, {hi}] is outside the radius grid")
    curves, _ = stacked_curves(observed, ensemble, lo, hi)
    ranks = curve_ranks(curves)
    rank0 = int(ranks[0])
    others = ranks[1:]
    total = ensemble.m + 1
    p_minus = float(np.count_nonzero(others < rank0)) / total
    p_plus = float(1 + np.count_nonzero(others <= rank0)) / total
    return TestOutcome(
        reject=p_plus < cfg.alpha,
        p_minus=p_minus,
        p_plus=p_plus,
        rank0=rank0,
        liberal_reject=p_minus < cfg.alpha,
    )


TESTS = {
    TestKind.ENVELOPE: envelope_test,
    TestKind.MAD: mad_test,
    TestKind.RANK: rank_envelope_test,
}
