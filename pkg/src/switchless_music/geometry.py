"""Circular antenna arrays, transmit/receive splits and the imaging grid.

Antenna indices exposed by this module are 1-based, matching the way
experiment settings are written down (``tx = 12, 13, 14``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class AntennaArray:
    """Antennas placed on a circle of radius ``radius`` at the given angles."""

    radius: float
    angles: tuple[float, ...]

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"array radius must be positive, got {self.radius}")
        if len(self.angles) == 0:
            raise ValueError("an array needs at least one antenna")
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        wrapped = sorted(a % (2 * math.pi) for a in self.angles)
        for lo, hi in zip(wrapped, wrapped[1:]):
            if math.isclose(lo, hi, rel_tol=0.0, abs_tol=1e-12):
                raise ValueError("antenna angles must be distinct modulo 2*pi")
        if len(wrapped) > 1 and math.isclose(
            wrapped[0] + 2 * math.pi, wrapped[-1], rel_tol=0.0, abs_tol=1e-12
        ):
            raise ValueError("antenna angles must be distinct modulo 2*pi")

    def __len__(self):
        return len(self.angles)

    @property
    def angle_array(self) -> np.ndarray:
        return np.asarray(self.angles, dtype=float)

    @property
    def positions(self) -> np.ndarray:
        """Cartesian antenna positions, shape ``(S, 2)``."""
        t = self.angle_array
        return self.radius * np.column_stack([np.cos(t), np.sin(t)])

    def subset(self, indices) -> "AntennaArray":
        """Sub-array made of the antennas with the given 1-based indices."""
        return AntennaArray(self.radius, tuple(self.angles[i - 1] for i in indices))


def uniform_circle_array(count: int, radius: float) -> AntennaArray:
    """``count`` antennas at angles 3*pi/2 - 2*(s-1)*pi/count, s = 1..count.

    Antenna 1 sits at the bottom of the circle and the numbering runs
    clockwise.
    """
    if count < 1:
        raise ValueError(f"need at least one antenna, got {count}")
    if not radius > 0:
        raise ValueError(f"array radius must be positive, got {radius}")
    angles = tuple(1.5 * math.pi - 2.0 * s * math.pi / count for s in range(count))
    return AntennaArray(float(radius), angles)


@dataclass(frozen=True)
class ArraySplit:
    """Disjoint transmitter (B) and receiver (A) subsets of one array."""

    full: AntennaArray
    tx_indices: tuple[int, ...]
    rx_indices: tuple[int, ...]

    def __post_init__(self):
        tx = tuple(int(i) for i in self.tx_indices)
        rx = tuple(int(i) for i in self.rx_indices)
        object.__setattr__(self, "tx_indices", tx)
        object.__setattr__(self, "rx_indices", rx)
        if not tx or not rx:
            raise ValueError("transmit and receive sets must both be non-empty")
        S = len(self.full)
        for name, idx in (("tx", tx), ("rx", rx)):
            bad = [i for i in idx if not 1 <= i <= S]
            if bad:
                raise IndexError(f"{name} indices {bad} outside 1..{S}")
            if len(set(idx)) != len(idx):
                raise ValueError(f"{name} indices contain duplicates: {idx}")
        overlap = sorted(set(tx) & set(rx))
        if overlap:
            raise ValueError(
                f"antennas {overlap} are both transmitter and receiver; "
                "without a switching device the sets must be disjoint"
            )

    @property
    def tx(self) -> AntennaArray:
        return self.full.subset(self.tx_indices)

    @property
    def rx(self) -> AntennaArray:
        return self.full.subset(self.rx_indices)

    @property
    def M(self) -> int:
        return len(self.tx_indices)

    @property
    def N(self) -> int:
        return len(self.rx_indices)

    @property
    def tx_positions(self) -> np.ndarray:
        return self.full.positions[np.asarray(self.tx_indices) - 1]

    @property
    def rx_positions(self) -> np.ndarray:
        return self.full.positions[np.asarray(self.rx_indices) - 1]


def split_array(array: AntennaArray, tx, rx) -> ArraySplit:
    return ArraySplit(array, tuple(tx), tuple(rx))


@dataclass(frozen=True, eq=False)
class RoiGrid:
    """Nodes of an origin-centred square lattice that fall inside a disk.

    ``points`` are listed row by row (y outer, x inner, both ascending);
    ``mask`` marks which nodes of the ``(2n+1, 2n+1)`` bounding box are kept.
    """

    radius: float
    step: float
    points: np.ndarray = field(repr=False)
    mask: np.ndarray = field(repr=False)

    @property
    def axis(self) -> np.ndarray:
        n = (self.mask.shape[0] - 1) // 2
        return np.arange(-n, n + 1) * self.step

    def __len__(self):
        return len(self.points)

    def same_as(self, other: "RoiGrid") -> bool:
        return (
            self.radius == other.radius
            and self.step == other.step
            and self.mask.shape == other.mask.shape
            and bool(np.array_equal(self.points, other.points))
        )

    def nearest(self, point) -> int:
        """Index of the grid point closest to ``point``."""
        d = np.sum((self.points - np.asarray(point, dtype=float)) ** 2, axis=1)
        return int(np.argmin(d))


def roi_grid(radius: float, step: float) -> RoiGrid:
    if not radius > 0 or not step > 0:
        raise ValueError(f"radius and step must be positive, got {radius}, {step}")
    if step > radius:
        raise ValueError(f"step {step} exceeds the region radius {radius}")
    n = int(math.floor(radius / step + 1e-9))
    ax = np.arange(-n, n + 1) * step
    X, Y = np.meshgrid(ax, ax)
    mask = X**2 + Y**2 <= radius**2
    points = np.column_stack([X[mask], Y[mask]])
    points.setflags(write=False)
    mask.setflags(write=False)
    return RoiGrid(float(radius), float(step), points, mask)
