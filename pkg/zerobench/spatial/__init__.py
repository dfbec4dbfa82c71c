"""Spatial statistics and geometry of spectrogram zero patterns."""

from zerobench.spatial.delaunay import Triangle, Triangulation, delaunay
from zerobench.spatial.pattern import (
    PlanarPointSet,
    Window,
    ZeroAnalysis,
    analyze_zeros,
    nearest_distance,
    scale_zeros,
)
from zerobench.spatial.summary import (
    CurveKind,
    RadiusGrid,
    SummaryCurve,
    default_radius_grid,
    empty_space_estimate,
    reference_lattice,
    summary_curve,
    variance_stabilize,
)

__all__ = [
    "CurveKind",
    "PlanarPointSet",
    "RadiusGrid",
    "SummaryCurve",
    "Triangle",
    "Triangulation",
    "Window",
    "ZeroAnalysis",
    "analyze_zeros",
    "default_radius_grid",
    "delaunay",
    "empty_space_estimate",
    "nearest_distance",
    "reference_lattice",
    "scale_zeros",
    "summary_curve",
    "variance_stabilize",
]
