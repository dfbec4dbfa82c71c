"""Signal-domain estimation from long-edged Delaunay triangles of the zeros."""

import logging

import numpy as np
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.denoise.empty_space import (
    Scale,
    cell_images,
    reconstruct_from_band,
    resolve_scale,
)
from zerobench.spatial.delaunay import Triangulation, delaunay
from zerobench.spatial.pattern import analyze_zeros
from zerobench.tf.stft import StftParams, TFMask

logger = logging.getLogger(__name__)

# Relative slack for cells lying on a triangle edge.
EDGE_TOLERANCE = 1e-9


def selected_triangles(
    tri: Triangulation, l_max: float, exclude_border: bool = False
) -> NDArray[np.bool_]:
    """Triangles with an edge longer than l_max.

    With `exclude_border`, triangles whose circumcircle crosses the observation window
    boundary are dropped.
    """
    selected = tri.max_edges > l_max
    if exclude_border and len(tri):
        clearance = tri.points.window.border_distance(tri.circumcenters)
        selected &= clearance >= tri.circumradii
    return np.asarray(selected, dtype=bool)


def rasterize_triangles(
    corners: NDArray[np.float64], grid_shape: tuple[int, int], params: StftParams
) -> NDArray[np.bool_]:
    """Cells whose plane image lies in any closed counterclockwise triangle.

    Args:
        corners: (t, 3, 2) triangle vertices in plane coordinates.
        grid_shape: Mask shape.
        params: Analysis parameters defining the plane map.
    """
    rows, cols = grid_shape
    mask = np.zeros(grid_shape, dtype=bool)
    images = cell_images(grid_shape, params)
    for triangle in corners:
        n_lo = max(0, int(np.floor(triangle[:, 0].min() * params.T)))
        n_hi = min(rows - 1, int(np.ceil(triangle[:, 0].max() * params.T)))
        k_lo = max(0, int(np.floor(triangle[:, 1].min() * params.K / params.T)))
        k_hi = min(cols - 1, int(np.ceil(triangle[:, 1].max() * params.K / params.T)))
        if n_lo > n_hi or k_lo > k_hi:
            continue
        block = images[n_lo : n_hi + 1, k_lo : k_hi + 1]
        inside = np.ones(block.shape[:2], dtype=bool)
        scale = float(np.max(np.sum((triangle - np.roll(triangle, -1, axis=0)) ** 2, axis=1)))
        for i in range(3):
            p, q = triangle[i], triangle[(i + 1) % 3]
            du, dv = block[..., 0] - p[0], block[..., 1] - p[1]
            cross = (q[0] - p[0]) * dv - (q[1] - p[1]) * du
            inside &= cross >= -EDGE_TOLERANCE * scale
        mask[n_lo : n_hi + 1, k_lo : k_hi + 1] |= inside
    return mask


def dt_mask(
    tri: Triangulation,
    l_max: float,
    grid_shape: tuple[int, int],
    scale_params: StftParams,
    exclude_border: bool = False,
) -> TFMask:
    """Union of the Delaunay triangles having an edge longer than l_max.

    Raises:
        InvalidParameterError: If l_max is not positive.
    """
    if not l_max > 0:
        raise InvalidParameterError(f"Edge threshold must be positive, got {l_max}")
    chosen = selected_triangles(tri, l_max, exclude_border)
    corners = tri.points.points[tri.simplices[chosen]]
    return TFMask(values=rasterize_triangles(corners, grid_shape, scale_params))


def dt_denoise(
    x: NDArray[np.generic],
    l_max: Scale = "auto",
    m: int = 199,
    seed: int = 0,
    params: StftParams | None = None,
    exclude_border: bool = False,
) -> tuple[NDArray[np.generic], TFMask]:
    """Delaunay-triangle denoising with T = sqrt(K); "auto" uses l_max = 2 r0.

    Returns:
        (estimate, N x K mask)
    """
    analysis = analyze_zeros(x, params)
    if l_max == "auto":
        edge = 2.0 * resolve_scale(analysis, "auto", m, seed)
    else:
        edge = resolve_scale(analysis, l_max, m, seed)
    logger.debug(f"Delaunay selection with l_max={edge:.4f}")
    tri = delaunay(analysis.pattern)
    band = dt_mask(tri, edge, analysis.zeros.shape, analysis.params, exclude_border)
    return reconstruct_from_band(analysis, band)
