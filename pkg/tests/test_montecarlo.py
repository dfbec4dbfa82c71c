"""Tests for null ensembles and the Monte Carlo tests."""

import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

import zerobench.detection.ensemble as ensemble_module
from zerobench.core.errors import InvalidParameterError
from zerobench.detection.ensemble import (
    NULL_ENSEMBLES,
    EnsembleCache,
    NullEnsemble,
    cached_null_ensemble,
    simulate_null_ensemble,
)
from zerobench.detection.montecarlo import (
    TestConfig,
    curve_ranks,
    envelope_test,
    mad_test,
    rank_envelope_test,
)
from zerobench.spatial.summary import CurveKind, RadiusGrid, SummaryCurve
from zerobench.tf.stft import StftParams

RADII = RadiusGrid(np.linspace(0.0, 1.0, 10))


def curve(values: np.ndarray | float, kind: CurveKind = CurveKind.F) -> SummaryCurve:
    return SummaryCurve(radii=RADII, values=np.broadcast_to(values, (10,)).astype(float), kind=kind)


def ensemble(rows: list[np.ndarray | float], kind: CurveKind = CurveKind.F) -> NullEnsemble:
    return NullEnsemble(
        curves=tuple(curve(r, kind) for r in rows),
        seed=0,
        signal_length=64,
        stft_params=StftParams.default(64),
        radii=RADII,
        kind=kind,
    )


def constant_ensemble(m: int) -> NullEnsemble:
    return ensemble([j / 100.0 for j in range(1, m + 1)])


def brute_force_ranks(curves: np.ndarray) -> list[int]:
    """Largest k whose k-th lower/upper envelopes contain each curve at every radius."""
    ranks = []
    total = curves.shape[0]
    for row in curves:
        best = 0
        for k in range(1, total + 1):
            lower = np.sort(curves, axis=0)[k - 1]
            upper = np.sort(curves, axis=0)[::-1][k - 1]
            if np.all((lower <= row) & (row <= upper)):
                best = k
        ranks.append(best)
    return ranks


class TestTestConfig:
    """Tests for TestConfig.rank_for."""

    def test_rank_from_alpha(self) -> None:
        """k = alpha (m + 1)."""
        assert TestConfig(alpha=0.05).rank_for(199) == 10
        assert TestConfig(alpha=0.05).rank_for(19) == 1

    def test_alpha_must_match_m(self) -> None:
        """alpha (m + 1) must be an integer."""
        with pytest.raises(InvalidParameterError, match="must be an integer"):
            TestConfig(alpha=0.05).rank_for(100)

    def test_explicit_rank(self) -> None:
        """An explicit k overrides alpha, within [1, m]."""
        assert TestConfig(k_rank=3).rank_for(100) == 3
        with pytest.raises(InvalidParameterError, match="must lie in"):
            TestConfig(k_rank=20).rank_for(10)


class TestEnvelopeTest:
    """Tests for envelope_test and mad_test."""

    def test_extreme_observation_rejected(self) -> None:
        """An observation far above every simulation is rejected with p = 1 / (m + 1)."""
        outcome = envelope_test(curve(1.0), constant_ensemble(19), TestConfig(alpha=0.05))
        assert outcome.reject
        assert outcome.p_plus == pytest.approx(1 / 20)
        assert outcome.t0 is not None and outcome.t0 >= outcome.threshold

    def test_central_observation_accepted(self) -> None:
        """An observation equal to the mean curve has t0 = 0 and is kept."""
        nulls = constant_ensemble(19)
        mean = float(np.mean([j / 100.0 for j in range(1, 20)]))
        outcome = envelope_test(curve(mean), nulls, TestConfig(alpha=0.05))
        assert not outcome.reject
        assert outcome.t0 == pytest.approx(0.0, abs=1e-12)
        assert outcome.p_plus >= 0.9

    def test_duplicate_member_ties_reject(self) -> None:
        """Duplicating the most extreme member ties t_(1) and rejects."""
        nulls = ensemble([0.1, 0.2, 0.3, 0.9])
        outcome = envelope_test(curve(0.9), nulls, TestConfig(k_rank=1))
        assert outcome.t0 == pytest.approx(outcome.threshold)
        assert outcome.reject

    def test_duplicate_member_not_extreme(self) -> None:
        """Duplicating a central member does not reject at k = 1."""
        nulls = ensemble([0.1, 0.2, 0.3, 0.9])
        assert not envelope_test(curve(0.3), nulls, TestConfig(k_rank=1)).reject

    def test_r_mc_beyond_grid(self) -> None:
        """r_mc above the largest radius is refused."""
        with pytest.raises(InvalidParameterError, match="exceeds"):
            envelope_test(curve(0.5), constant_ensemble(19), TestConfig(r_mc=2.0))

    def test_all_undefined_interval(self) -> None:
        """An interval without defined radii is an error."""
        values = np.where(RADII.radii > 0.5, np.nan, 0.5)
        nulls = ensemble([values] * 19)
        with pytest.raises(InvalidParameterError, match="No defined radius"):
            envelope_test(curve(values), nulls, TestConfig(r_min=0.6))

    def test_kind_mismatch(self) -> None:
        """Observed and simulated curves must be of the same kind."""
        with pytest.raises(InvalidParameterError, match="kind"):
            envelope_test(curve(0.5, CurveKind.F_TILDE), constant_ensemble(19), TestConfig())

    def test_single_radius_spike(self) -> None:
        """A deviation at one radius larger than any simulated one is caught by the sup norm."""
        nulls = constant_ensemble(19)
        observed = np.full(10, 0.1)
        observed[4] = 5.0
        assert mad_test(curve(observed), nulls, TestConfig(k_rank=1)).reject

    def test_mad_equals_sup_envelope(self) -> None:
        """mad_test is the envelope test with p = inf over all radii."""
        rng = np.random.default_rng(0)
        for _ in range(20):
            nulls = ensemble([rng.uniform(0, 1, 10) for _ in range(19)])
            observed = curve(rng.uniform(0, 1, 10))
            cfg = TestConfig(alpha=0.05, r_min=0.0)
            via_mad = mad_test(observed, nulls, cfg)
            sup_cfg = cfg.model_copy(update={"p_norm": math.inf})
            via_envelope = envelope_test(observed, nulls, sup_cfg)
            assert via_mad.reject == via_envelope.reject
            assert via_mad.t0 == pytest.approx(via_envelope.t0)


class TestRankEnvelopeTest:
    """Tests for curve_ranks and rank_envelope_test."""

    def test_ranks_match_brute_force(self) -> None:
        """Extreme ranks agree with an exhaustive envelope search."""
        rng = np.random.default_rng(1)
        for _ in range(10):
            curves = rng.uniform(0, 1, size=(5, 10))
            assert list(curve_ranks(curves)) == brute_force_ranks(curves)

    def test_ranks_with_ties(self) -> None:
        """Tied values share the least extreme rank."""
        curves = np.array([[0.5, 0.5], [0.5, 0.5], [0.1, 0.9], [0.9, 0.1]])
        assert list(curve_ranks(curves)) == brute_force_ranks(curves)

    def test_extreme_curve_interval(self) -> None:
        """An extreme observation ties with the lowest simulation: p- = 0, p+ = 2 / (m + 1)."""
        nulls = constant_ensemble(19)
        cfg = TestConfig(alpha=0.05, interval=(0.5, 1.0))
        outcome = rank_envelope_test(curve(1.0), nulls, cfg)
        assert outcome.rank0 == 1
        assert outcome.p_minus == pytest.approx(0.0)
        assert outcome.p_plus == pytest.approx(2 / 20)
        assert not outcome.reject
        assert outcome.liberal_reject

    def test_extreme_curve_rejected_with_more_simulations(self) -> None:
        """With m = 99 the conservative test rejects the extreme observation."""
        outcome = rank_envelope_test(
            curve(2.0), constant_ensemble(99), TestConfig(alpha=0.05, interval=(0.5, 1.0))
        )
        assert outcome.p_plus == pytest.approx(2 / 100)
        assert outcome.reject

    def test_median_curve_not_rejected(self) -> None:
        """The pointwise median of the ensemble has p+ = 1."""
        outcome = rank_envelope_test(
            curve(0.10), constant_ensemble(19), TestConfig(alpha=0.05, interval=(0.5, 1.0))
        )
        assert outcome.p_plus == pytest.approx(1.0)
        assert not outcome.reject

    def test_p_values_ordered(self) -> None:
        """p- <= p+ and conservative rejections imply liberal ones."""
        rng = np.random.default_rng(2)
        for _ in range(20):
            nulls = ensemble([rng.normal(0, 1, 10) for _ in range(39)])
            outcome = rank_envelope_test(
                curve(rng.normal(0, 1, 10)), nulls, TestConfig(interval=(0.0, 1.0))
            )
            assert outcome.p_minus <= outcome.p_plus
            assert outcome.liberal_reject or not outcome.reject

    def test_interval_outside_grid(self) -> None:
        """The interval must overlap the radius grid."""
        with pytest.raises(InvalidParameterError, match="outside the radius grid"):
            rank_envelope_test(curve(0.5), constant_ensemble(19), TestConfig(interval=(2.0, 3.0)))


class TestNullEnsemble:
    """Tests for simulate_null_ensemble."""

    def test_deterministic(self) -> None:
        """Same (m, seed) gives identical curves regardless of worker count."""
        first = simulate_null_ensemble(4, 128, radii=RADII, seed=9)
        second = simulate_null_ensemble(4, 128, radii=RADII, seed=9, workers=3)
        np.testing.assert_array_equal(first.matrix(), second.matrix())

    def test_curves_are_distribution_functions(self) -> None:
        """Every simulated F curve is nondecreasing in [0, 1]."""
        nulls = simulate_null_ensemble(5, 128, radii=RADII, seed=1)
        assert nulls.m == 5
        for row in nulls.matrix():
            defined = row[np.isfinite(row)]
            assert np.all(np.diff(defined) >= 0)
            assert defined.min() >= 0 and defined.max() <= 1

    def test_f_tilde_range(self) -> None:
        """F_tilde curves lie in [0, pi / 2]."""
        nulls = simulate_null_ensemble(3, 128, radii=RADII, kind=CurveKind.F_TILDE, seed=2)
        values = nulls.matrix()
        finite = values[np.isfinite(values)]
        assert finite.min() >= 0 and finite.max() <= math.pi / 2

    def test_needs_one_realization(self) -> None:
        """m must be positive."""
        with pytest.raises(InvalidParameterError, match=">= 1"):
            simulate_null_ensemble(0, 128)

    def test_mixed_kinds_refused(self) -> None:
        """Ensemble curves must share the ensemble kind."""
        with pytest.raises(InvalidParameterError, match="share"):
            NullEnsemble(
                curves=(curve(0.1), curve(0.2, CurveKind.F_TILDE)),
                seed=0,
                signal_length=64,
                stft_params=StftParams.default(64),
                radii=RADII,
                kind=CurveKind.F,
            )


class TestEnsembleCache:
    """Tests for EnsembleCache and cached_null_ensemble."""

    def test_concurrent_misses_simulate_once(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Threads asking for the same ensemble share one simulation."""
        calls: list[object] = []

        def slow_simulation(*args: object) -> NullEnsemble:
            calls.append(args[-1])
            time.sleep(0.05)
            return constant_ensemble(3)

        monkeypatch.setattr(ensemble_module, "simulate_null_ensemble", slow_simulation)
        cache = EnsembleCache(workers=6)
        args = (3, 64, StftParams.default(64), RADII, CurveKind.F, 0, 4.0)
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda _: cache.get(*args), range(8)))
        assert calls == [6]
        assert all(r is results[0] for r in results)

    def test_distinct_keys_and_eviction(self) -> None:
        """Different seeds are separate entries; the oldest entry is evicted first."""
        cache = EnsembleCache(maxsize=2)
        params = StftParams.default(128)
        first = cache.get(2, 128, params, RADII, CurveKind.F, 0, 4.0)
        cache.get(2, 128, params, RADII, CurveKind.F, 1, 4.0)
        assert cache.get(2, 128, params, RADII, CurveKind.F, 0, 4.0) is first
        cache.get(2, 128, params, RADII, CurveKind.F, 2, 4.0)
        assert len(cache) == 2
        assert cache.get(2, 128, params, RADII, CurveKind.F, 0, 4.0) is first
        cache.clear()
        assert len(cache) == 0

    def test_cached_matches_simulation(self) -> None:
        """The shared cache returns the same curves as a direct simulation."""
        NULL_ENSEMBLES.clear()
        cached = cached_null_ensemble(3, 128, radii=RADII, seed=5)
        direct = simulate_null_ensemble(3, 128, radii=RADII, seed=5)
        np.testing.assert_array_equal(cached.matrix(), direct.matrix())
        assert cached_null_ensemble(3, 128, radii=RADII, seed=5) is cached


@pytest.mark.slow
class TestLevelUnderNoise:
    """Rejection rates of the tests when the observation is itself a noise realization."""

    POOL_SIZE = 2400
    M = 199

    @pytest.fixture(scope="class")
    def pool(self) -> NullEnsemble:
        return simulate_null_ensemble(self.POOL_SIZE, 256, seed=77, workers=4)

    def draw(
        self, pool: NullEnsemble, rng: np.random.Generator
    ) -> tuple[SummaryCurve, NullEnsemble]:
        picks = rng.permutation(self.POOL_SIZE)[: self.M + 1]
        simulated = NullEnsemble(
            curves=tuple(pool.curves[i] for i in picks[1:]),
            seed=pool.seed,
            signal_length=pool.signal_length,
            stft_params=pool.stft_params,
            radii=pool.radii,
            kind=pool.kind,
        )
        return pool.curves[picks[0]], simulated

    def test_envelope_rate_is_nominal(self, pool: NullEnsemble) -> None:
        """With k = 10 and m = 199 the envelope test rejects about 5% of 1000 noise draws."""
        rng = np.random.default_rng(0)
        cfg = TestConfig(k_rank=10)
        rejections = sum(envelope_test(*self.draw(pool, rng), cfg).reject for _ in range(1000))
        assert 0.035 <= rejections / 1000 <= 0.065

    def test_rank_test_conservative(self, pool: NullEnsemble) -> None:
        """The conservative rank decision rejects at most 5% of 400 noise draws."""
        rng = np.random.default_rng(1)
        cfg = TestConfig(alpha=0.05)
        rejections = sum(
            rank_envelope_test(*self.draw(pool, rng), cfg).reject for _ in range(400)
        )
        # 0.05 plus about one binomial standard deviation over 400 draws.
        assert rejections <= 24
