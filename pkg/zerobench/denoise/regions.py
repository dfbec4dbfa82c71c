"""Connected-component counting on extraction masks."""

import numpy as np
import scipy.ndimage

from zerobench.tf.stft import TFMask

EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


def isolated_region_count(mask: TFMask) -> int:
    """Number of 8-connected true regions of the mask."""
    _, count = scipy.ndimage.label(mask.values, structure=EIGHT_CONNECTED)
    return int(count)
