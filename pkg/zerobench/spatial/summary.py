"""Empty-space summary curves with border correction."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.spatial.pattern import PlanarPointSet, Window

DEFAULT_REF_DENSITY = 4.0
DEFAULT_RADIUS_MAX = 2.0
DEFAULT_RADIUS_COUNT = 100


class CurveKind(str, Enum):
    """Summary statistic carried by a curve."""

    F = "F"  # empty space function
    F_TILDE = "F_tilde"  # arcsin(sqrt(F))


@dataclass(frozen=True)
class RadiusGrid:
    """Strictly increasing, nonnegative radii."""

    radii: NDArray[np.float64]

    def __post_init__(self) -> None:
        radii = self.radii
        if radii.ndim != 1 or radii.size == 0:
            raise InvalidParameterError("Radius grid must be a nonempty vector")
        if radii[0] < 0:
            raise InvalidParameterError("Radii must be nonnegative")
        if np.any(np.diff(radii) <= 0):
            raise InvalidParameterError("Radii must be strictly increasing")

    @property
    def count(self) -> int:
        return int(self.radii.size)

    @property
    def r_max(self) -> float:
        return float(self.radii[-1])

    def weights(self) -> NDArray[np.float64]:
        """Quadrature weights (the grid spacing for uniform grids)."""
        if self.count == 1:
            return np.ones(1)
        return np.asarray(np.gradient(self.radii), dtype=np.float64)

    def within(self, lo: float, hi: float) -> NDArray[np.bool_]:
        return (self.radii >= lo) & (self.radii <= hi)

    def key(self) -> tuple[float, ...]:
        return tuple(float(r) for r in self.radii)


def default_radius_grid() -> RadiusGrid:
    """100 equispaced radii on [0, 2]."""
    return RadiusGrid(np.linspace(0.0, DEFAULT_RADIUS_MAX, DEFAULT_RADIUS_COUNT))


@dataclass(frozen=True)
class SummaryCurve:
    """Estimated r -> S(r); undefined entries are NaN."""

    radii: RadiusGrid
    values: NDArray[np.float64]
    kind: CurveKind

    def __post_init__(self) -> None:
        if self.values.shape != self.radii.radii.shape:
            raise InvalidParameterError("Curve values must match the radius grid")

    @property
    def defined(self) -> NDArray[np.bool_]:
        return np.isfinite(self.values)


def reference_lattice(window: Window, ref_density: float) -> NDArray[np.float64]:
    """Regular lattice of spacing 1/sqrt(ref_density), cell-centered in the window."""
    if not ref_density > 0:
        raise InvalidParameterError(f"Reference density must be positive, got {ref_density}")
    step = 1.0 / math.sqrt(ref_density)
    nu = max(1, int(math.floor(window.width / step + 1e-9)))
    nv = max(1, int(math.floor(window.height / step + 1e-9)))
    u = window.u_min + step * (0.5 + np.arange(nu))
    v = window.v_min + step * (0.5 + np.arange(nv))
    uu, vv = np.meshgrid(u, v, indexing="ij")
    return np.column_stack([uu.ravel(), vv.ravel()])


def empty_space_estimate(
    pts: PlanarPointSet,
    radii: RadiusGrid,
    ref_density: float = DEFAULT_REF_DENSITY,
    monotone: bool = True,
) -> SummaryCurve:
    """Border-corrected (reduced-sample) estimate of the empty space function.

    F(r) = #{u : b(u) >= r, d(u) <= r} / #{u : b(u) >= r} over the reference lattice, where b is
    the distance to the window boundary and d the distance to the nearest point. Radii above half
    the shorter window side, or with no eligible reference location, are NaN.

    The eligible set shrinks as r grows, so the raw ratio can decrease. With `monotone` the
    running maximum over defined radii is returned instead, a monotone correction that makes
    the estimate a distribution function; `monotone=False` returns the raw ratio.

    Args:
        pts: Observed point pattern.
        radii: Evaluation radii.
        ref_density: Reference locations per unit area.
        monotone: Apply the running-maximum correction.

    Returns:
        Curve of kind F.
    """
    lattice = reference_lattice(pts.window, ref_density)
    border = pts.window.border_distance(lattice)
    nearest = pts.nearest_distances(lattice)

    r = radii.radii[:, None]
    eligible = border[None, :] >= r
    covered = eligible & (nearest[None, :] <= r)
    denominator = eligible.sum(axis=1)
    numerator = covered.sum(axis=1)

    defined = (denominator > 0) & (radii.radii <= pts.window.shorter_side / 2.0)
    raw = np.full(radii.count, np.nan)
    raw[defined] = numerator[defined] / denominator[defined]
    values = np.where(defined, np.fmax.accumulate(raw), np.nan) if monotone else raw
    return SummaryCurve(radii=radii, values=values, kind=CurveKind.F)


def variance_stabilize(curve: SummaryCurve) -> SummaryCurve:
    """Map an F curve through arcsin(sqrt(.)).

    Raises:
        InvalidParameterError: If the curve is not of kind F.
    """
    if curve.kind != CurveKind.F:
        raise InvalidParameterError(f"Variance stabilization expects an F curve, got {curve.kind}")
    values = np.arcsin(np.sqrt(np.clip(curve.values, 0.0, 1.0)))
    return SummaryCurve(radii=curve.radii, values=values, kind=CurveKind.F_TILDE)


def summary_curve(
    pts: PlanarPointSet,
    radii: RadiusGrid,
    kind: CurveKind,
    ref_density: float = DEFAULT_REF_DENSITY,
) -> SummaryCurve:
    """Estimate F and stabilize it when `kind` asks for F_tilde."""
    curve = empty_space_estimate(pts, radii, ref_density)
    return variance_stabilize(curve) if kind == CurveKind.F_TILDE else curve
