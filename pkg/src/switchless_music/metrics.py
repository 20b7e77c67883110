"""Jaccard index between thresholded maps and true anomaly supports."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .geometry import RoiGrid
from .imaging import ImagingMap


@dataclass(frozen=True, eq=False)
class BinarySupport:
    grid: RoiGrid
    members: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.members, dtype=bool)
        if m.shape != (len(self.grid),):
            raise ValueError("support needs one flag per grid point")
        object.__setattr__(self, "members", m)

    def __len__(self):
        return int(self.members.sum())


def truth_support(grid: RoiGrid, anomalies) -> BinarySupport:
    """Grid points lying inside (or on the rim of) any anomaly disk."""
    members = np.zeros(len(grid), dtype=bool)
    for an in anomalies:
        rel = grid.points - np.asarray(an.center)
        # relative slack so lattice points exactly on the rim survive rounding
        members |= np.sum(rel**2, axis=1) <= an.radius**2 * (1 + 1e-9)
    if not members.any():
        warnings.warn("no grid point falls inside the anomalies; truth support is empty", stacklevel=2)
    return BinarySupport(grid, members)


def threshold_support(m: ImagingMap, zeta: float) -> BinarySupport:
    if not 0 <= zeta <= 1:
        raise ValueError(f"threshold {zeta} outside [0, 1]")
    if m.values.max() != 1.0:
        raise ValueError("map must be normalised (maximum exactly 1)")
    return BinarySupport(m.grid, m.values >= zeta)


def jaccard(a: BinarySupport, b: BinarySupport) -> float:
    """|a & b| / |a | b| in percent; 0 (with a warning) for two empty sets."""
    if not a.grid.same_as(b.grid):
        raise ValueError("supports are defined on different grids")
    union = np.count_nonzero(a.members | b.members)
    if union == 0:
        warnings.warn("Jaccard index of two empty sets taken as 0", stacklevel=2)
        return 0.0
    return 100.0 * np.count_nonzero(a.members & b.members) / union


def jaccard_curve(m: ImagingMap, truth: BinarySupport, zetas) -> list[tuple[float, float]]:
    zetas = [float(z) for z in zetas]
    if any(b < a for a, b in zip(zetas, zetas[1:])):
        raise ValueError("thresholds must be sorted ascending")
    return [(z, jaccard(threshold_support(m, z), truth)) for z in zetas]
