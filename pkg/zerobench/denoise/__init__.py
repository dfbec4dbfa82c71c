"""Denoising by thresholding, zero-based domain estimation and synchrosqueezing."""

from zerobench.denoise.empty_space import empty_space_denoise, empty_space_mask
from zerobench.denoise.regions import isolated_region_count
from zerobench.denoise.ridges import RidgeSet, extract_ridges, sst_rd_denoise
from zerobench.denoise.thresholding import (
    estimate_noise_std,
    garrote_threshold,
    hard_threshold,
    threshold_denoise,
    threshold_sweep,
)
from zerobench.denoise.triangulation import dt_denoise, dt_mask

__all__ = [
    "RidgeSet",
    "dt_denoise",
    "dt_mask",
    "empty_space_denoise",
    "empty_space_mask",
    "estimate_noise_std",
    "extract_ridges",
    "garrote_threshold",
    "hard_threshold",
    "isolated_region_count",
    "sst_rd_denoise",
    "threshold_denoise",
    "threshold_sweep",
]
