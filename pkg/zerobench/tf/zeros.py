"""Spectrogram zeros as strict local minima."""

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.ndimage
from numpy.typing import NDArray

from zerobench.core.errors import InvalidParameterError
from zerobench.tf.stft import Spectrogram

TieMode = Literal["strict", "lexicographic"]

_NEIGHBORS = [(dn, dk) for dn in (-1, 0, 1) for dk in (-1, 0, 1) if (dn, dk) != (0, 0)]


@dataclass(frozen=True)
class GridZeroSet:
    """Zeros as (n, k) grid indices, found away from a `margin`-cell border."""

    points: NDArray[np.int64]
    margin: int
    shape: tuple[int, int]

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def as_set(self) -> set[tuple[int, int]]:
        return {(int(n), int(k)) for n, k in self.points}


def find_zeros(spec: Spectrogram, margin: int, tie_mode: TieMode = "strict") -> GridZeroSet:
    """Locate the local minima of a spectrogram.

    Args:
        spec: Spectrogram to search.
        margin: Border width (cells) excluded on every edge.
        tie_mode: "strict" keeps only values smaller than all 8 neighbors. "lexicographic"
            also accepts equal neighbors that come later in (n, k) order, so every plateau
            yields deterministic representatives.

    Returns:
        The zero set, ordered by (n, k).

    Raises:
        InvalidParameterError: If margin < 1.
    """
    if margin < 1:
        raise InvalidParameterError(f"Zero search margin must be >= 1, got {margin}")

    values = spec.values
    rows, cols = spec.shape
    if rows <= 2 * margin or cols <= 2 * margin:
        return GridZeroSet(np.empty((0, 2), dtype=np.int64), margin, spec.shape)

    if tie_mode == "strict":
        footprint = np.ones((3, 3), dtype=bool)
        footprint[1, 1] = False
        neighbor_min = scipy.ndimage.minimum_filter(values, footprint=footprint, mode="nearest")
        is_min = values < neighbor_min
    elif tie_mode == "lexicographic":
        is_min = np.ones_like(values, dtype=bool)
        padded = np.pad(values, 1, mode="edge")
        for dn, dk in _NEIGHBORS:
            neighbor = padded[1 + dn : 1 + dn + rows, 1 + dk : 1 + dk + cols]
            later = dn > 0 or (dn == 0 and dk > 0)
            is_min &= (values <= neighbor) if later else (values < neighbor)
    else:
        raise InvalidParameterError(f"Unknown tie mode '{tie_mode}'")

    interior = np.zeros_like(is_min)
    interior[margin : rows - margin, margin : cols - margin] = True
    points = np.argwhere(is_min & interior).astype(np.int64)
    return GridZeroSet(points=points, margin=margin, shape=spec.shape)
