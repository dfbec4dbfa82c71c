"""Catalog of synthetic AM-FM test signals.

Every component is a real cosine a(n) cos(phi(n)) whose amplitude carries a 10% cosine taper at
both ends; `inst_freq` is phi'(n) / 2 pi on the component's support. Frequencies are in
cycles/sample and stay inside (0, 0.5).

| name                | J | structure                                                   |
|---------------------|---|-------------------------------------------------------------|
| LinearChirp         | 1 | f0 -> f1 linear sweep                                       |
| CosChirp            | 1 | sinusoidal FM around fc                                     |
| McMultiLinear       | n | `count` parallel linear chirps, `spacing` apart             |
| McTripleCosChirp    | 3 | sinusoidal-FM chirps whose gaps grow from 60% of `spacing`  |
|                     |   | at the left edge (spacing 0.04 = close, 0.12 = spread)      |
| McImpulsesAndTone   | 2 | tone + train of Gaussian-windowed bursts                    |
| HermiteFunction     | 1 | L2-normalized Hermite function modulated to fc              |
| McCrossingChirps    | 2 | up and down linear chirps crossing mid-signal               |
"""

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import scipy.signal
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError, UnknownNameError
from zerobench.signals.base import Signal

MIN_LENGTH = 64
TAPER_FRACTION = 0.1
# Bursts count as active within this many standard deviations of their center.
BURST_SUPPORT = 4.0


@dataclass
class _Component:
    amplitude: NDArray[np.float64]
    phase: NDArray[np.float64]
    inst_freq: NDArray[np.float64]
    active: NDArray[np.bool_]


def _taper(N: int) -> NDArray[np.float64]:
    return np.asarray(scipy.signal.windows.tukey(N, alpha=2 * TAPER_FRACTION), dtype=np.float64)


def _swept(
    N: int,
    freq: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    phase: Callable[[NDArray[np.float64]], NDArray[np.float64]],
) -> _Component:
    n = np.arange(N, dtype=np.float64)
    return _Component(
        amplitude=_taper(N),
        phase=2.0 * math.pi * phase(n),
        inst_freq=freq(n),
        active=np.ones(N, dtype=bool),
    )


def _linear(N: int, f0: float, f1: float) -> _Component:
    rate = (f1 - f0) / (N - 1)
    return _swept(N, lambda n: f0 + rate * n, lambda n: f0 * n + rate * n**2 / 2.0)


def _assemble(
    name: str, components: list[_Component], params: dict[str, Any], normalize: bool = False
) -> Signal:
    N = components[0].amplitude.shape[0]
    samples = np.zeros(N, dtype=np.float64)
    inst_freq = np.full((len(components), N), np.nan)
    for j, c in enumerate(components):
        samples += c.amplitude * np.cos(c.phase)
        inst_freq[j, c.active] = c.inst_freq[c.active]
    if np.any(inst_freq[np.isfinite(inst_freq)] <= 0) or np.any(
        inst_freq[np.isfinite(inst_freq)] >= 0.5
    ):
        raise InvalidParameterError(f"{name}: parameters push a component outside (0, 0.5)")
    if normalize:
        samples /= np.linalg.norm(samples)
    return Signal(
        name=name,
        samples=samples,
        inst_freq=inst_freq,
        components_per_time=np.sum(np.isfinite(inst_freq), axis=0).astype(np.int64),
        params=params,
    )


def linear_chirp(N: int, f0: float = 0.1, f1: float = 0.4) -> Signal:
    return _assemble("LinearChirp", [_linear(N, f0, f1)], {"f0": f0, "f1": f1})


def cos_chirp(N: int, fc: float = 0.25, fd: float = 0.1, fm: float = 2.0) -> Signal:
    """Sinusoidal FM: f(n) = fc + fd cos(2 pi fm n / N)."""
    w = 2.0 * math.pi * fm / N
    component = _swept(
        N,
        lambda n: fc + fd * np.cos(w * n),
        lambda n: fc * n + fd / w * np.sin(w * n),
    )
    return _assemble("CosChirp", [component], {"fc": fc, "fd": fd, "fm": fm})


def mc_multi_linear(
    N: int, count: int = 3, spacing: float = 0.1, f0: float = 0.1, sweep: float = 0.15
) -> Signal:
    if count < 1:
        raise InvalidParameterError(f"McMultiLinear needs count >= 1, got {count}")
    components = [_linear(N, f0 + j * spacing, f0 + j * spacing + sweep) for j in range(count)]
    params = {"count": count, "spacing": spacing, "f0": f0, "sweep": sweep}
    return _assemble("McMultiLinear", components, params)


def mc_triple_cos_chirp(
    N: int,
    spacing: float = 0.08,
    fc: float = 0.2,
    fd: float = 0.03,
    fm: float = 1.5,
    start: float = 0.6,
) -> Signal:
    """Three sinusoidal-FM chirps; the gap between neighbours grows from start * spacing."""
    w = 2.0 * math.pi * fm / N
    components = []
    for offset in (-1.0, 0.0, 1.0):
        gap = offset * spacing

        def freq(n: NDArray[np.float64], gap: float = gap) -> NDArray[np.float64]:
            growth = start + (1.0 - start) * n / (N - 1)
            return fc + gap * growth + fd * np.cos(w * n)

        def phase(n: NDArray[np.float64], gap: float = gap) -> NDArray[np.float64]:
            ramp = start * n + (1.0 - start) * n**2 / (2.0 * (N - 1))
            return fc * n + gap * ramp + fd / w * np.sin(w * n)

        components.append(_swept(N, freq, phase))
    params = {"spacing": spacing, "fc": fc, "fd": fd, "fm": fm, "start": start}
    return _assemble("McTripleCosChirp", components, params)


def mc_impulses_and_tone(
    N: int,
    tone: float = 0.15,
    carrier: float = 0.35,
    width: float = 3.0,
    positions: tuple[float, ...] = (0.55, 0.7, 0.85),
) -> Signal:
    """Tone plus Gaussian-windowed bursts at fractional `positions` of the signal."""
    n = np.arange(N, dtype=np.float64)
    tone_component = _swept(N, lambda n: np.full_like(n, tone), lambda n: tone * n)

    bursts = np.zeros(N)
    phase = np.zeros(N)
    active = np.zeros(N, dtype=bool)
    for position in positions:
        center = position * (N - 1)
        envelope = np.exp(-0.5 * ((n - center) / width) ** 2)
        support = np.abs(n - center) <= BURST_SUPPORT * width
        closer = support | (envelope > bursts)
        phase = np.where(closer, carrier * (n - center), phase)
        bursts = np.maximum(bursts, envelope)
        active |= support
    burst_component = _Component(
        amplitude=bursts * _taper(N),
        phase=2.0 * math.pi * phase,
        inst_freq=np.full(N, carrier),
        active=active,
    )
    params = {"tone": tone, "carrier": carrier, "width": width, "positions": list(positions)}
    return _assemble("McImpulsesAndTone", [tone_component, burst_component], params)


def hermite_values(order: int, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Orthonormal Hermite function h_order(x) by the three-term recurrence."""
    previous = np.zeros_like(x)
    current = math.pi**-0.25 * np.exp(-(x**2) / 2.0)
    for k in range(order):
        previous, current = current, (
            math.sqrt(2.0 / (k + 1)) * x * current - math.sqrt(k / (k + 1)) * previous
        )
    return current


def hermite_function(N: int, order: int = 15, fc: float = 0.25) -> Signal:
    """Hermite function on the centered grid, scaled to match a sqrt(N)-wide Gaussian window."""
    if order < 0:
        raise InvalidParameterError(f"Hermite order must be >= 0, got {order}")
    centered = np.arange(N, dtype=np.float64) - (N - 1) / 2.0
    x = math.sqrt(2.0 * math.pi / N) * centered
    component = _Component(
        amplitude=hermite_values(order, x) * _taper(N),
        phase=2.0 * math.pi * fc * centered,
        inst_freq=np.full(N, fc),
        active=np.ones(N, dtype=bool),
    )
    return _assemble("HermiteFunction", [component], {"order": order, "fc": fc}, normalize=True)


def mc_crossing_chirps(N: int, f0: float = 0.1, f1: float = 0.4) -> Signal:
    components = [_linear(N, f0, f1), _linear(N, f1, f0)]
    return _assemble("McCrossingChirps", components, {"f0": f0, "f1": f1})


@dataclass(frozen=True)
class SignalEntry:
    """Catalog entry: builder plus a one-line description."""

    builder: Callable[..., Signal]
    description: str
    defaults: dict[str, Any] = field(default_factory=dict)


SIGNAL_CATALOG: dict[str, SignalEntry] = {
    "LinearChirp": SignalEntry(
        linear_chirp, "Linear chirp from f0 to f1", {"f0": 0.1, "f1": 0.4}
    ),
    "CosChirp": SignalEntry(
        cos_chirp, "Sinusoidal frequency modulation", {"fc": 0.25, "fd": 0.1, "fm": 2.0}
    ),
    "McMultiLinear": SignalEntry(
        mc_multi_linear,
        "Parallel linear chirps",
        {"count": 3, "spacing": 0.1, "f0": 0.1, "sweep": 0.15},
    ),
    "McTripleCosChirp": SignalEntry(
        mc_triple_cos_chirp,
        "Three sinusoidal-FM chirps converging at the left edge",
        {"spacing": 0.08, "fc": 0.2, "fd": 0.03, "fm": 1.5, "start": 0.6},
    ),
    "McImpulsesAndTone": SignalEntry(
        mc_impulses_and_tone,
        "Tone plus Gaussian-windowed impulses",
        {"tone": 0.15, "carrier": 0.35, "width": 3.0, "positions": [0.55, 0.7, 0.85]},
    ),
    "HermiteFunction": SignalEntry(
        hermite_function, "Modulated Hermite function (circular pattern)", {"order": 15, "fc": 0.25}
    ),
    "McCrossingChirps": SignalEntry(
        mc_crossing_chirps, "Two crossing linear chirps", {"f0": 0.1, "f1": 0.4}
    ),
}


def make_signal(name: str, N: int, params: dict[str, Any] | None = None) -> Signal:
    """Build a catalog signal.

    Args:
        name: Catalog name.
        N: Number of samples (>= 64).
        params: Overrides of the entry's default parameters.

    Returns:
        The signal with its metadata.

    Raises:
        UnknownNameError: If the name is not in the catalog.
        InvalidParameterError: If N is too small or a parameter is unknown or out of range.
    """
    if name not in SIGNAL_CATALOG:
        raise UnknownNameError("signal", name, list(SIGNAL_CATALOG))
    if N < MIN_LENGTH:
        raise InvalidParameterError(f"Signals need N >= {MIN_LENGTH}, got {N}")
    entry = SIGNAL_CATALOG[name]
    overrides = dict(params or {})
    unknown = set(overrides) - set(entry.defaults)
    if unknown:
        raise InvalidParameterError(f"Unknown parameters for {name}: {sorted(unknown)}")
    if "positions" in overrides:
        overrides["positions"] = tuple(overrides["positions"])
    return entry.builder(N, **overrides)


def list_signals() -> list[dict[str, Any]]:
    """Machine-readable catalog: name, J, default parameters and description."""
    listing = []
    for name, entry in SIGNAL_CATALOG.items():
        example = make_signal(name, 256)
        listing.append(
            {
                "name": name,
                "J": example.component_count,
                "parameters": dict(entry.defaults),
                "description": entry.description,
            }
        )
    return listing
