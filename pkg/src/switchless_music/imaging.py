"""MUSIC-type imaging from a non-symmetric scattering matrix.

The receiver side (left singular vectors) and the transmitter side (right
singular vectors) each get their own noise-subspace projector; the map
F = (F_rx + F_tx) / 2 averages the two reciprocal projection norms.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .forward import ScatteringMatrix, antenna_fields, wavenumber
from .geometry import ArraySplit, RoiGrid

DEFAULT_THRESHOLD = 0.1
DEFAULT_CLAMP = 1e8
CHUNK = 2048

MAP_KINDS = ("F_tx", "F_rx", "F", "N_tx", "N_rx", "N")


class SubspaceError(ValueError):
    """The signal subspace cannot be formed (e.g. an all-zero matrix)."""


@dataclass(frozen=True, eq=False)
class SubspaceSplit:
    singular_values: np.ndarray
    left_signal: np.ndarray
    right_signal: np.ndarray
    rank: int


def subspace_split(K, threshold: float = DEFAULT_THRESHOLD) -> SubspaceSplit:
    """Keep singular triplets with tau_j >= threshold * tau_1."""
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    A = K.entries if isinstance(K, ScatteringMatrix) else np.asarray(K, dtype=complex)
    U, s, Vh = np.linalg.svd(A)
    if s.size == 0 or s[0] == 0:
        raise SubspaceError("scattering matrix is zero; no signal subspace")
    r = int(np.count_nonzero(s >= threshold * s[0]))
    return SubspaceSplit(s, U[:, :r], Vh[:r].conj().T, r)


def noise_projection_norm(sub: SubspaceSplit, v, side: str = "left"):
    """|(I - sum_j s_j s_j^*) v| for unit ``v`` (columns of ``v`` batch)."""
    S = _side(sub, side)
    v = np.asarray(v, dtype=complex)
    if v.shape[0] != S.shape[0]:
        raise ValueError(f"vector length {v.shape[0]} does not match {side} dimension {S.shape[0]}")
    if not np.allclose(np.linalg.norm(v, axis=0), 1.0, rtol=0, atol=1e-8):
        raise ValueError("test vector is not of unit norm")
    resid = v - S @ (S.conj().T @ v)
    return np.linalg.norm(resid, axis=0)


def _side(sub: SubspaceSplit, side: str) -> np.ndarray:
    if side == "left":
        return sub.left_signal
    if side == "right":
        return sub.right_signal
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def noise_projector(sub: SubspaceSplit, side: str = "left") -> np.ndarray:
    S = _side(sub, side)
    return np.eye(S.shape[0]) - S @ S.conj().T


def test_vectors(points, split: ArraySplit, k, field_model: str = "exact-hankel"):
    """Unit test vectors f (receivers) and g (conjugated transmitters).

    ``points`` may be one point or an ``(n, 2)`` array; columns of the
    returned arrays correspond to points.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    R = split.full.radius
    f = antenna_fields(split.rx_positions, split.rx.angle_array, R, pts, k, field_model)
    g = np.conj(antenna_fields(split.tx_positions, split.tx.angle_array, R, pts, k, field_model))
    f /= np.linalg.norm(f, axis=0)
    g /= np.linalg.norm(g, axis=0)
    if np.ndim(points) == 1:
        return f[:, 0], g[:, 0]
    return f, g


# keep pytest from collecting the public name above as a test
test_vectors.__test__ = False


@dataclass(frozen=True, eq=False)
class ImagingMap:
    grid: RoiGrid
    values: np.ndarray = field(repr=False)
    kind: str
    peak_clamp: float = DEFAULT_CLAMP

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(self.grid),):
            raise ValueError("map needs exactly one value per grid point")
        if self.kind not in MAP_KINDS:
            raise ValueError(f"unknown map kind {self.kind!r}")
        object.__setattr__(self, "values", v)

    @property
    def argmax_point(self) -> np.ndarray:
        return self.grid.points[int(np.argmax(self.values))]


def _reciprocal(norms: np.ndarray, clamp: float) -> np.ndarray:
    with np.errstate(divide="ignore"):
        out = 1.0 / norms
    return np.minimum(out, clamp)


def imaging_maps(
    K: ScatteringMatrix,
    grid: RoiGrid,
    threshold: float = DEFAULT_THRESHOLD,
    field_model: str | None = None,
    clamp: float = DEFAULT_CLAMP,
    workers: int | None = None,
):
    """F_tx, F_rx and F over ``grid``.

    ``field_model`` defaults to the model the data were generated with.
    The sweep runs in fixed-size chunks, so results do not depend on
    ``workers``.
    """
    if len(grid) == 0:
        raise ValueError("grid has no points")
    sub = subspace_split(K, threshold)
    model = field_model or K.field_model
    k = wavenumber(K.medium)

    def sweep(lo):
        pts = grid.points[lo : lo + CHUNK]
        f, g = test_vectors(pts, K.split, k, model)
        return (
            noise_projection_norm(sub, f, "left"),
            noise_projection_norm(sub, g, "right"),
        )

    starts = range(0, len(grid), CHUNK)
    n = workers or os.cpu_count() or 1
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            parts = list(pool.map(sweep, starts))
    else:
        parts = [sweep(lo) for lo in starts]
    rx_norm = np.concatenate([p[0] for p in parts])
    tx_norm = np.concatenate([p[1] for p in parts])
    f_rx = _reciprocal(rx_norm, clamp)
    f_tx = _reciprocal(tx_norm, clamp)
    f_all = np.minimum(0.5 * (f_rx + f_tx), clamp)
    return (
        ImagingMap(grid, f_tx, "F_tx", clamp),
        ImagingMap(grid, f_rx, "F_rx", clamp),
        ImagingMap(grid, f_all, "F", clamp),
    )


def normalize_map(m: ImagingMap) -> ImagingMap:
    top = float(np.max(m.values))
    if not top > 0:
        raise ValueError("cannot normalise a map without a positive maximum")
    kind = {"F_tx": "N_tx", "F_rx": "N_rx", "F": "N"}.get(m.kind, m.kind)
    return ImagingMap(m.grid, m.values / top, kind, m.peak_clamp)
