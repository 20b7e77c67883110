"""MUSIC imaging with split transmit/receive antenna arrays."""

from .config import ExperimentConfig, load_config, parse_config
from .forward import (
    AnomalySpec,
    MediumSpec,
    ScatteringMatrix,
    born_scattering_matrix,
    contrast,
    small_anomaly_check,
    wavelength,
    wavenumber,
)
from .geometry import ArraySplit, RoiGrid, roi_grid, split_array, uniform_circle_array
from .imaging import imaging_maps, normalize_map, subspace_split
from .metrics import jaccard, jaccard_curve, threshold_support, truth_support
from .theory import arrangement_score, arrangement_spectrum, series_map

__version__ = "0.1.0"

__all__ = [
    "AnomalySpec",
    "ArraySplit",
    "ExperimentConfig",
    "MediumSpec",
    "RoiGrid",
    "ScatteringMatrix",
    "arrangement_score",
    "arrangement_spectrum",
    "born_scattering_matrix",
    "contrast",
    "imaging_maps",
    "jaccard",
    "jaccard_curve",
    "load_config",
    "normalize_map",
    "parse_config",
    "roi_grid",
    "series_map",
    "small_anomaly_check",
    "split_array",
    "subspace_split",
    "threshold_support",
    "truth_support",
    "uniform_circle_array",
    "wavelength",
    "wavenumber",
]
